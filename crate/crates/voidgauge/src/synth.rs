//! Deterministic synthetic fixtures.
//!
//! A [`CountSpec`] pins every count the indicator analyses will extract;
//! generation assigns gate memberships to index prefixes (so the groups are
//! nested and trivially consistent) and fills every unconstrained field from
//! a seeded generator, drawing only values that cannot flip a pinned gate.
//! The same spec and seed always produce the same records.

use std::collections::HashMap;
use std::path::Path;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::ingest::{Dataset, Provenance};
use crate::model::{
    AdaptFrequency, ExamPolicy, IntellectView, ItemDraft, ItemScales, Lang, PromptSharing,
    RespondentId, Response, ToolDifference, YesNoUnsure,
};
use crate::recode::derive_signals;

/// Target counts for a synthetic dataset, phrased as the sizes of each
/// analysis group and of the qualifying subset inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountSpec {
    /// Total records to generate.
    pub total_n: u32,
    /// Size of the capacity-screen group.
    pub capacity_gate: u32,
    /// Full-permission answers inside the capacity-screen group.
    pub capacity_fully_allow: u32,
    /// Respondents who adapt output always or frequently (all of whom are
    /// generated with an observed contribution share).
    pub high_control: u32,
    /// High contribution shares inside the high-control group.
    pub high_contribution: u32,
    /// Discipline-challenge answers inside the high-contribution group.
    pub discipline_challenge: u32,
    /// Size of the lived-change group.
    pub ontology_gate: u32,
    /// Self-examination inside the lived-change group.
    pub metacognition: u32,
    /// Immaterial stances inside the self-examination subset.
    pub gated_immaterial: u32,
    /// Other stances inside the self-examination subset.
    pub gated_other: u32,
    /// Immaterial stances in the rest of the lived-change group.
    pub ungated_immaterial: u32,
    /// Other stances in the rest of the lived-change group.
    pub ungated_other: u32,
}

/// A spec whose counts cannot all be met at once.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("infeasible count spec: {0}")]
pub struct InfeasibleSpec(String);

impl CountSpec {
    /// The bundled profile used by the reproduction fixture.
    pub fn pilot() -> CountSpec {
        let spec: CountSpec = toml::from_str(include_str!("../data/pilot_counts.toml"))
            .expect("bundled count profile must parse");
        spec.check_feasible().expect("bundled count profile must be feasible");
        spec
    }

    pub fn load(path: &Path) -> Result<CountSpec, SpecLoadError> {
        let text = std::fs::read_to_string(path).map_err(|source| SpecLoadError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let spec: CountSpec =
            toml::from_str(&text).map_err(|e| SpecLoadError::Parse(e.to_string()))?;
        spec.check_feasible()?;
        Ok(spec)
    }

    /// First violated constraint, if any. Subset counts may not exceed their
    /// group, and the stance splits must tile the lived-change group.
    pub fn check_feasible(&self) -> Result<(), InfeasibleSpec> {
        let le = |small: u32, big: u32, what: &str| {
            if small > big {
                Err(InfeasibleSpec(format!("{what} ({small} > {big})")))
            } else {
                Ok(())
            }
        };
        le(self.capacity_gate, self.total_n, "capacity group exceeds total")?;
        le(
            self.capacity_fully_allow,
            self.capacity_gate,
            "full-permission count exceeds its group",
        )?;
        le(self.high_control, self.total_n, "high-control group exceeds total")?;
        le(
            self.high_contribution,
            self.high_control,
            "high-contribution count exceeds its group",
        )?;
        le(
            self.discipline_challenge,
            self.high_contribution,
            "discipline-challenge count exceeds its group",
        )?;
        le(self.ontology_gate, self.total_n, "lived-change group exceeds total")?;
        le(
            self.metacognition,
            self.ontology_gate,
            "self-examination count exceeds its group",
        )?;
        if self.gated_immaterial + self.gated_other != self.metacognition {
            return Err(InfeasibleSpec(format!(
                "stance split {} + {} does not tile the self-examination subset of {}",
                self.gated_immaterial, self.gated_other, self.metacognition
            )));
        }
        if self.ungated_immaterial + self.ungated_other != self.ontology_gate - self.metacognition
        {
            return Err(InfeasibleSpec(format!(
                "stance split {} + {} does not tile the remaining lived-change group of {}",
                self.ungated_immaterial,
                self.ungated_other,
                self.ontology_gate - self.metacognition
            )));
        }
        Ok(())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SpecLoadError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("count spec parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Infeasible(#[from] InfeasibleSpec),
}

/// Generates a dataset matching `spec` exactly, deterministically in `seed`.
pub fn generate_fixture(spec: &CountSpec, seed: u64) -> Result<Dataset, InfeasibleSpec> {
    spec.check_feasible()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drafts = Vec::with_capacity(spec.total_n as usize);
    for i in 0..spec.total_n {
        drafts.push(draw_record(spec, i, &mut rng));
    }

    // Identical records would be dropped on re-ingest; give any collision a
    // short unique reflection (too short to reach the text gate, so no pinned
    // count moves).
    let mut seen: HashMap<(Lang, ItemScales), usize> = HashMap::new();
    let mut responses = Vec::with_capacity(drafts.len());
    for (i, (lang, draft)) in drafts.into_iter().enumerate() {
        let mut draft = draft;
        let (mut scales, _) = ItemScales::from_draft(draft.clone())
            .expect("synthesized draft must validate");
        if seen.contains_key(&(lang, scales.clone())) {
            draft.item10 = Some(format!("#{i}"));
            let (rescued, _) =
                ItemScales::from_draft(draft).expect("synthesized draft must validate");
            scales = rescued;
        }
        seen.insert((lang, scales.clone()), i);
        responses.push(Response::new(
            RespondentId::new(format!("r{:04}", i + 1)),
            lang,
            scales,
        ));
    }

    let ds = Dataset {
        responses,
        provenance: Provenance {
            source: format!("synthetic(seed = {seed})"),
            rows_read: spec.total_n as usize,
            drops: Vec::new(),
            warnings: Vec::new(),
        },
    };
    debug_assert!(recount(&ds) == *spec, "generator drifted from its spec");
    Ok(ds)
}

/// Re-derives every spec count from a dataset with the canonical thresholds.
/// Inverse of generation; used to prove a fixture honors its spec.
pub fn recount(ds: &Dataset) -> CountSpec {
    let mut c = CountSpec {
        total_n: ds.responses.len() as u32,
        capacity_gate: 0,
        capacity_fully_allow: 0,
        high_control: 0,
        high_contribution: 0,
        discipline_challenge: 0,
        ontology_gate: 0,
        metacognition: 0,
        gated_immaterial: 0,
        gated_other: 0,
        ungated_immaterial: 0,
        ungated_other: 0,
    };
    for r in &ds.responses {
        let s = derive_signals(r);
        if s.capacity_gate {
            c.capacity_gate += 1;
            if s.fully_allow {
                c.capacity_fully_allow += 1;
            }
        }
        if s.high_control && s.high_contribution.is_some() {
            c.high_control += 1;
            if s.high_contribution == Some(true) {
                c.high_contribution += 1;
                if s.discipline_challenge {
                    c.discipline_challenge += 1;
                }
            }
        }
        if s.ontology_gate {
            c.ontology_gate += 1;
            match (s.metacognition, s.immaterial) {
                (true, true) => {
                    c.metacognition += 1;
                    c.gated_immaterial += 1;
                }
                (true, false) => {
                    c.metacognition += 1;
                    c.gated_other += 1;
                }
                (false, true) => c.ungated_immaterial += 1,
                (false, false) => c.ungated_other += 1,
            }
        }
    }
    c
}

/// One record. Index prefixes pin the group memberships; everything else is
/// drawn from the values that leave those memberships alone.
fn draw_record(spec: &CountSpec, i: u32, rng: &mut ChaCha8Rng) -> (Lang, ItemDraft) {
    let in_capacity = i < spec.capacity_gate;
    let fully_allow = i < spec.capacity_fully_allow;
    let in_control = i < spec.high_control;
    let high_contrib = i < spec.high_contribution;
    let challenge = i < spec.discipline_challenge;
    let in_lived_change = i < spec.ontology_gate;
    let self_exam = i < spec.metacognition;

    let lang = *[Lang::En, Lang::Ja].choose(rng).unwrap();

    // Capacity screen: skill strictly above 5 and both Yes answers, or a
    // skill at most 5 which breaks the conjunction on its own.
    let (item1a, item2, item4) = if in_capacity {
        (rng.gen_range(6..=10), YesNoUnsure::Yes, YesNoUnsure::Yes)
    } else {
        (
            rng.gen_range(0..=5),
            *YesNoUnsure::ALL.choose(rng).unwrap(),
            *YesNoUnsure::ALL.choose(rng).unwrap(),
        )
    };
    let item3 = if fully_allow {
        ExamPolicy::FullyAllow
    } else {
        *[ExamPolicy::Limit, ExamPolicy::Forbid, ExamPolicy::Unsure]
            .choose(rng)
            .unwrap()
    };

    // Control and contribution. High-control records always carry an
    // observed share; outside the group Sometimes/Never split freely, and a
    // Sometimes share is unconstrained because the contribution count only
    // reads inside the high-control group.
    let (item1b, item1c) = if in_control {
        let freq = *[AdaptFrequency::Always, AdaptFrequency::Frequently]
            .choose(rng)
            .unwrap();
        let share = if high_contrib {
            rng.gen_range(66..=100)
        } else {
            rng.gen_range(0..=65)
        };
        (freq, Some(share))
    } else {
        match *[AdaptFrequency::Sometimes, AdaptFrequency::Never]
            .choose(rng)
            .unwrap()
        {
            AdaptFrequency::Never => (AdaptFrequency::Never, None),
            freq => (freq, Some(rng.gen_range(0..=100))),
        }
    };
    let item5 = if high_contrib {
        if challenge {
            YesNoUnsure::Yes
        } else {
            *[YesNoUnsure::No, YesNoUnsure::Unsure].choose(rng).unwrap()
        }
    } else {
        *YesNoUnsure::ALL.choose(rng).unwrap()
    };

    // Lived-change group: in-kind difference plus changed practice. Outside
    // the group, any of the other eight item6/item7 combinations.
    let (item6, item7) = if in_lived_change {
        (YesNoUnsure::Yes, ToolDifference::InKind)
    } else {
        let mut pairs = Vec::with_capacity(8);
        for &six in YesNoUnsure::ALL {
            for &seven in ToolDifference::ALL {
                if !(six == YesNoUnsure::Yes && seven == ToolDifference::InKind) {
                    pairs.push((six, seven));
                }
            }
        }
        *pairs.choose(rng).unwrap()
    };

    // Self-examination inside the lived-change group alternates between its
    // two routes: an outright Yes on prompt sharing, or a reflection long
    // enough to clear the text gate.
    let (item8, item10) = if in_lived_change {
        if self_exam {
            if i % 2 == 0 {
                (PromptSharing::Yes, maybe_short_note(i, rng))
            } else {
                (
                    *[PromptSharing::NeedMoreInfo, PromptSharing::No]
                        .choose(rng)
                        .unwrap(),
                    Some(long_note(i)),
                )
            }
        } else {
            (
                *[PromptSharing::NeedMoreInfo, PromptSharing::No]
                    .choose(rng)
                    .unwrap(),
                maybe_short_note(i, rng),
            )
        }
    } else {
        (*PromptSharing::ALL.choose(rng).unwrap(), maybe_short_note(i, rng))
    };

    let item9 = if in_lived_change {
        let immaterial = if self_exam {
            (i as u64) < u64::from(spec.gated_immaterial)
        } else {
            u64::from(i) < u64::from(spec.metacognition) + u64::from(spec.ungated_immaterial)
        };
        if immaterial {
            IntellectView::Immaterial
        } else {
            *[IntellectView::Material, IntellectView::Unsure]
                .choose(rng)
                .unwrap()
        }
    } else {
        *IntellectView::ALL.choose(rng).unwrap()
    };

    (
        lang,
        ItemDraft {
            item1a,
            item1b,
            item1c,
            item2,
            item3,
            item4,
            item5,
            item6,
            item7,
            item8,
            item9,
            item10,
        },
    )
}

/// A reflection of exactly twenty Unicode scalars, unique per record index.
fn long_note(i: u32) -> String {
    let mut s = format!("reflection {i:06}");
    while s.chars().count() < 20 {
        s.push('.');
    }
    debug_assert_eq!(s.chars().count(), 20);
    s
}

/// Either nothing or a note safely below the text gate.
fn maybe_short_note(i: u32, rng: &mut ChaCha8Rng) -> Option<String> {
    if rng.gen_bool(0.5) {
        Some(format!("ok {i}"))
    } else {
        None
    }
}
