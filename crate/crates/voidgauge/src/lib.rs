//! Indicator pipeline for a ten-item questionnaire on academic AI use.
//!
//! The instrument never asks its real questions directly: respondents answer
//! ten concrete items, and everything of interest is derived afterwards as
//! pre-specified boolean signals, filtered prevalences with exact intervals,
//! and one exact test of association. This crate operationalizes that
//! pipeline end to end:
//!
//! - [`model`]: typed answer domains and row validation
//! - [`ingest`]: CSV/JSONL readers, codebook translation, dedup, CSV writer
//! - [`recode`]: derived boolean signals and their cut points
//! - [`stats`]: Wilson intervals, Fisher's exact test, exact odds-ratio CIs
//! - [`indicators`]: the three pre-registered analyses
//! - [`rubric`]: the coherence rubric for procurement claims
//! - [`synth`]: deterministic fixtures pinned to target counts
//! - [`report`]: markdown, JSON, and plain renderings
//!
//! The pipeline is deterministic throughout: equal inputs produce
//! byte-identical reports, and fixtures are reproducible from a seed.

pub mod indicators;
pub mod ingest;
mod macros;
pub mod model;
pub mod recode;
pub mod report;
pub mod rubric;
pub mod stats;
pub mod synth;

// Every Rust block in the guide compiles and runs as a doc-test, so the book
// can never drift from the crate it documents.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }

    chapter!(overview, "overview.md");
    chapter!(instrument, "instrument.md");
    chapter!(ingest, "ingest.md");
    chapter!(signals, "signals.md");
    chapter!(indicators, "indicators.md");
    chapter!(intervals, "intervals.md");
    chapter!(exact_tests, "exact-tests.md");
    chapter!(rubric, "rubric.md");
    chapter!(fixtures, "fixtures.md");
    chapter!(cli, "cli.md");
}
