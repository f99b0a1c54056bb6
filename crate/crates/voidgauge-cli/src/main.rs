//! Command-line front end for the survey indicator pipeline: validate coded
//! exports, compute prevalence and association reports, generate seeded
//! fixtures, and classify procurement claims.
//!
//! Exit codes: 0 success, 1 validation or spec failure, 2 empty indicator
//! denominator, 3 I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};

use voidgauge::indicators::{compute_report, AnalysisOptions, IndicatorError};
use voidgauge::ingest::{self, Codebook, CodebookError, Dataset, IngestError, SourceFormat};
use voidgauge::model::IntellectView;
use voidgauge::recode::Thresholds;
use voidgauge::report::{render_json, render_markdown, render_plain, ReportMeta};
use voidgauge::rubric::{classify_claim, Claim, Purpose, Strength};
use voidgauge::synth::{generate_fixture, CountSpec, SpecLoadError};

#[derive(Parser)]
#[command(
    name = "voidgauge",
    version,
    about = "Filtered-prevalence indicators for the ten-item adaptation survey"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check every row of an export against the instrument's coding rules
    Validate(InputArgs),
    /// Compute the prevalence indicators and the stance association
    Compute(ComputeArgs),
    /// Write a deterministic synthetic fixture for a count profile
    Synth(SynthArgs),
    /// Classify one procurement claim on the purpose-by-strength grid
    ClaimCheck(ClaimArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Survey export to read
    #[arg(long)]
    input: PathBuf,

    /// Input layout; inferred from the file extension when omitted
    #[arg(long, value_enum)]
    format: Option<InFormat>,

    /// Label codebook (TOML); the embedded bilingual book when omitted
    #[arg(long)]
    codebook: Option<PathBuf>,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Confidence level for every interval, strictly between 0 and 1
    #[arg(long, default_value_t = 0.95)]
    confidence: f64,

    /// Skill screen: item 1a must exceed this to pass (strict)
    #[arg(long, default_value_t = Thresholds::default().skill_cut)]
    skill_cut: u8,

    /// Contribution screen: item 1c at or above this counts as high
    #[arg(long, default_value_t = Thresholds::default().contribution_cut)]
    contribution_cut: u8,

    /// Reflection screen: item 10 with at least this many Unicode scalars
    /// counts as substantive
    #[arg(long, default_value_t = Thresholds::default().text_gate)]
    text_gate: usize,

    /// Report format written to stdout
    #[arg(long, value_enum, default_value_t = OutFormat::Markdown)]
    out: OutFormat,

    /// Add a generation timestamp to the report header (off by default so
    /// identical inputs produce identical bytes)
    #[arg(long)]
    stamp: bool,
}

#[derive(Args)]
struct SynthArgs {
    /// Count profile (TOML); the embedded pilot profile when omitted
    #[arg(long)]
    spec: Option<PathBuf>,

    /// RNG seed; the same seed and profile always produce the same file
    #[arg(long, default_value_t = 7)]
    seed: u64,

    /// CSV file to write
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct ClaimArgs {
    /// Claimant's stance on whether intellect reduces to computation
    #[arg(long, value_enum)]
    stance: StanceArg,

    /// What the tool is for
    #[arg(long, value_enum)]
    purpose: PurposeArg,

    /// How the claim is framed
    #[arg(long, value_enum)]
    strength: StrengthArg,

    /// Output format written to stdout
    #[arg(long, value_enum, default_value_t = OutFormat::Plain)]
    out: OutFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum InFormat {
    Csv,
    Jsonl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Markdown,
    Json,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum StanceArg {
    Material,
    Immaterial,
    Unsure,
}

#[derive(Clone, Copy, ValueEnum)]
enum PurposeArg {
    Exploration,
    Scale,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrengthArg {
    Need,
    Want,
}

/// An error plus the process exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl Failure {
    /// Validation or spec failure.
    fn spec(err: impl Into<anyhow::Error>) -> Failure {
        Failure { code: 1, err: err.into() }
    }

    /// Empty indicator denominator.
    fn denominator(err: impl Into<anyhow::Error>) -> Failure {
        Failure { code: 2, err: err.into() }
    }

    /// I/O error.
    fn io(err: impl Into<anyhow::Error>) -> Failure {
        Failure { code: 3, err: err.into() }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version arrive here too; they are not failures.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            // Typed errors already render their cause; no chain printing.
            eprintln!("error: {}", f.err);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.cmd {
        Cmd::Validate(args) => cmd_validate(args),
        Cmd::Compute(args) => cmd_compute(args),
        Cmd::Synth(args) => cmd_synth(args),
        Cmd::ClaimCheck(args) => cmd_claim_check(args),
    }
}

fn load_codebook(path: &Option<PathBuf>) -> Result<Codebook, Failure> {
    match path {
        None => Ok(Codebook::embedded().clone()),
        Some(p) => Codebook::load(p).map_err(|e| match e {
            CodebookError::Io { .. } => Failure::io(e),
            _ => Failure::spec(e),
        }),
    }
}

fn load_dataset(args: &InputArgs) -> Result<Dataset, Failure> {
    let codebook = load_codebook(&args.codebook)?;
    let format = match args.format {
        Some(InFormat::Csv) => SourceFormat::Csv,
        Some(InFormat::Jsonl) => SourceFormat::Jsonl,
        None => SourceFormat::from_path(&args.input),
    };
    ingest::load(&args.input, format, &codebook).map_err(|e| match e {
        IngestError::Io { .. } => Failure::io(e),
        IngestError::Format { .. } => Failure::spec(e),
    })
}

fn cmd_validate(args: InputArgs) -> Result<ExitCode, Failure> {
    let ds = load_dataset(&args)?;
    let p = &ds.provenance;
    println!("source: {}", p.source);
    println!("rows read: {}", p.rows_read);
    println!("valid responses: {}", ds.responses.len());

    if !p.warnings.is_empty() {
        println!("repaired rows: {}", p.warnings.len());
        for w in &p.warnings {
            for v in &w.violations {
                println!("  row {}: {}: {}: {}", w.row, v.field, v.rule, v.message);
            }
        }
    }
    if !p.drops.is_empty() {
        println!("dropped rows: {}", p.drops.len());
        for d in &p.drops {
            println!("  row {}: {}", d.row, d.reason);
        }
    }

    // Duplicates are dataset-level exclusions, not coding failures: a file
    // whose only drops are duplicates still validates.
    let failures = p
        .drops
        .iter()
        .filter(|d| {
            matches!(
                d.reason,
                ingest::DropReason::Malformed(_) | ingest::DropReason::Invalid(_)
            )
        })
        .count();
    if failures > 0 {
        println!("result: FAIL ({failures} row(s) failed validation)");
        Ok(ExitCode::from(1))
    } else {
        println!("result: OK");
        Ok(ExitCode::SUCCESS)
    }
}

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode, Failure> {
    if !(args.confidence > 0.0 && args.confidence < 1.0) {
        return Err(Failure::spec(anyhow!(
            "confidence {} is not strictly between 0 and 1",
            args.confidence
        )));
    }
    let thresholds = Thresholds {
        skill_cut: args.skill_cut,
        contribution_cut: args.contribution_cut,
        text_gate: args.text_gate,
    };
    thresholds.validate().map_err(Failure::spec)?;

    let ds = load_dataset(&args.input)?;
    let opts = AnalysisOptions {
        confidence: args.confidence,
        thresholds,
    };
    let report = compute_report(&ds, &opts).map_err(|e| match e {
        IndicatorError::EmptyDenominator { .. } => Failure::denominator(e),
        IndicatorError::Stats(_) => Failure::spec(e),
    })?;

    let mut meta = ReportMeta::for_dataset(&ds);
    if args.stamp {
        meta.stamp = Some(jiff::Timestamp::now().to_string());
    }
    let rendered = match args.out {
        OutFormat::Markdown => render_markdown(&report, &meta),
        OutFormat::Json => render_json(&report, &meta),
        OutFormat::Plain => render_plain(&report, &meta),
    };
    print!("{rendered}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_synth(args: SynthArgs) -> Result<ExitCode, Failure> {
    let spec = match &args.spec {
        None => CountSpec::pilot(),
        Some(p) => CountSpec::load(p).map_err(|e| match e {
            SpecLoadError::Io { .. } => Failure::io(e),
            _ => Failure::spec(e),
        })?,
    };
    let ds = generate_fixture(&spec, args.seed).map_err(Failure::spec)?;
    ingest::write_csv(&ds.responses, &args.out).map_err(Failure::io)?;
    eprintln!(
        "wrote {} records to {} (seed {})",
        ds.responses.len(),
        args.out.display(),
        args.seed
    );
    Ok(ExitCode::SUCCESS)
}

fn stance_label(v: IntellectView) -> &'static str {
    match v {
        IntellectView::Material => "material",
        IntellectView::Immaterial => "immaterial",
        IntellectView::Unsure => "unsure",
    }
}

fn cmd_claim_check(args: ClaimArgs) -> Result<ExitCode, Failure> {
    let claim = Claim {
        stance: match args.stance {
            StanceArg::Material => IntellectView::Material,
            StanceArg::Immaterial => IntellectView::Immaterial,
            StanceArg::Unsure => IntellectView::Unsure,
        },
        purpose: match args.purpose {
            PurposeArg::Exploration => Purpose::Exploration,
            PurposeArg::Scale => Purpose::Scale,
        },
        strength: match args.strength {
            StrengthArg::Need => Strength::Need,
            StrengthArg::Want => Strength::Want,
        },
    };
    let assessment = classify_claim(&claim);

    match args.out {
        OutFormat::Json => {
            let doc = serde_json::json!({
                "stance": stance_label(claim.stance),
                "purpose": claim.purpose.to_string(),
                "strength": claim.strength.to_string(),
                "quadrant": assessment.quadrant,
                "evidence_class": assessment.evidence_class.to_string(),
                "verdict": assessment.verdict.to_string(),
            });
            println!("{}", serde_json::to_string_pretty(&doc).expect("static doc"));
        }
        OutFormat::Markdown => {
            println!("# Claim assessment");
            println!();
            println!(
                "- claim: {} stance, {} purpose, framed as a {}",
                stance_label(claim.stance),
                claim.purpose,
                claim.strength
            );
            println!("- quadrant: {}", assessment.quadrant);
            println!("- evidence class: {}", assessment.evidence_class);
            println!("- verdict: **{}**", assessment.verdict);
        }
        OutFormat::Plain => {
            println!(
                "claim: {} stance, {} purpose, framed as a {}",
                stance_label(claim.stance),
                claim.purpose,
                claim.strength
            );
            println!("quadrant: {}", assessment.quadrant);
            println!("evidence class: {}", assessment.evidence_class);
            println!("verdict: {}", assessment.verdict);
        }
    }
    Ok(ExitCode::SUCCESS)
}
