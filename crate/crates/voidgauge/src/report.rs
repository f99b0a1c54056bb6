//! Deterministic report rendering: markdown for reading, JSON for machines,
//! plain text for terminals. Same numbers in all three, byte-identical
//! between runs unless a caller opts into a timestamp.

use serde::Serialize;

use crate::indicators::{AnalysisReport, IndicatorResult};
use crate::ingest::Dataset;
use crate::stats::OddsRatio;

/// Provenance shown in a report header. A stamp is opt-in because default
/// output must not change between identical runs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReportMeta {
    pub source: String,
    pub rows_read: usize,
    pub responses: usize,
    pub dropped: usize,
    pub stamp: Option<String>,
}

impl ReportMeta {
    pub fn for_dataset(ds: &Dataset) -> ReportMeta {
        ReportMeta {
            source: ds.provenance.source.clone(),
            rows_read: ds.provenance.rows_read,
            responses: ds.responses.len(),
            dropped: ds.provenance.drops.len(),
            stamp: None,
        }
    }
}

/// Percentage rounded half away from zero, the convention used everywhere a
/// share is shown as a whole number.
pub fn rounded_pct(share: f64) -> i64 {
    (share * 100.0).round() as i64
}

fn pct_cell(r: &IndicatorResult) -> String {
    let p = &r.proportion;
    format!(
        "{}% ({}-{})",
        rounded_pct(p.p_hat),
        rounded_pct(p.ci_low),
        rounded_pct(p.ci_high)
    )
}

fn fmt_or_bound(x: f64) -> String {
    if x.is_infinite() {
        "unbounded".to_string()
    } else {
        format!("{x:.6}")
    }
}

fn id_list(ids: &[crate::model::RespondentId]) -> String {
    ids.iter()
        .map(|id| id.as_str())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Markdown rendering with every table, interval, and membership list.
pub fn render_markdown(report: &AnalysisReport, meta: &ReportMeta) -> String {
    let mut out = String::new();
    let o = &report.options;
    let t = &o.thresholds;

    out.push_str("# Indicator report\n\n");
    out.push_str(&format!("- source: {}\n", meta.source));
    out.push_str(&format!(
        "- rows read: {}; analysed: {}; dropped: {}\n",
        meta.rows_read, meta.responses, meta.dropped
    ));
    out.push_str(&format!(
        "- confidence level: {} (Wilson score intervals; exact conditional interval for the odds ratio)\n",
        o.confidence
    ));
    out.push_str(&format!(
        "- cuts: skill > {}, contribution >= {}, reflection >= {} scalars\n",
        t.skill_cut, t.contribution_cut, t.text_gate
    ));
    if !t.is_canonical() {
        out.push_str(
            "- **WARNING: non-canonical cuts; shares are not comparable to registered results**\n",
        );
    }
    if let Some(stamp) = &meta.stamp {
        out.push_str(&format!("- generated: {stamp}\n"));
    }

    out.push_str("\n## Prevalence\n\n");
    out.push_str("| id | group and outcome | k/n | share (CI) |\n");
    out.push_str("|:---|:------------------|----:|:-----------|\n");
    for r in report.indicators() {
        out.push_str(&format!(
            "| {} | {} | {}/{} | {} |\n",
            r.id,
            r.label,
            r.proportion.k,
            r.proportion.n,
            pct_cell(r)
        ));
    }

    let split = &report.ontology_split;
    out.push_str("\n## Stances in the lived-change group\n\n");
    out.push_str(&format!(
        "- material: {}, immaterial: {}, unsure: {}\n",
        split.material, split.immaterial, split.unsure
    ));

    let ct = &report.crosstab;
    out.push_str("\n## Self-examination by stance (lived-change group)\n\n");
    out.push_str("| | immaterial | other | total |\n");
    out.push_str("|:--|--:|--:|--:|\n");
    out.push_str(&format!(
        "| self-examination | {} | {} | {} |\n",
        ct.a,
        ct.b,
        ct.a + ct.b
    ));
    out.push_str(&format!(
        "| none | {} | {} | {} |\n",
        ct.c,
        ct.d,
        ct.c + ct.d
    ));

    let assoc = &report.association;
    out.push('\n');
    if assoc.degenerate {
        out.push_str(
            "- association: degenerate table (an empty margin leaves nothing to test); \
             conventional summary p = 1, interval 0 to unbounded\n",
        );
    } else {
        out.push_str(&format!("- sample odds ratio: {}\n", assoc.sample_or));
        out.push_str(&format!(
            "- exact conditional CI: {} to {}\n",
            fmt_or_bound(assoc.or_ci_low),
            fmt_or_bound(assoc.or_ci_high)
        ));
        out.push_str(&format!(
            "- Fisher exact p (two-sided): {:.4e}\n",
            assoc.p_two_sided
        ));
    }

    out.push_str("\n## Membership\n");
    for r in report.indicators() {
        out.push_str(&format!("\n### {} {}\n\n", r.id, r.label));
        out.push_str(&format!(
            "- denominator ({}): {}\n",
            r.denominator_ids.len(),
            id_list(&r.denominator_ids)
        ));
        out.push_str(&format!(
            "- numerator ({}): {}\n",
            r.numerator_ids.len(),
            id_list(&r.numerator_ids)
        ));
    }

    out
}

/// Terminal rendering: the same numbers without markup or membership lists.
pub fn render_plain(report: &AnalysisReport, meta: &ReportMeta) -> String {
    let mut out = String::new();
    let o = &report.options;
    let t = &o.thresholds;

    out.push_str("indicator report\n");
    out.push_str(&format!("source: {}\n", meta.source));
    out.push_str(&format!(
        "rows read: {}; analysed: {}; dropped: {}\n",
        meta.rows_read, meta.responses, meta.dropped
    ));
    out.push_str(&format!("confidence level: {}\n", o.confidence));
    out.push_str(&format!(
        "cuts: skill > {}, contribution >= {}, reflection >= {} scalars\n",
        t.skill_cut, t.contribution_cut, t.text_gate
    ));
    if !t.is_canonical() {
        out.push_str("WARNING: non-canonical cuts; shares are not comparable to registered results\n");
    }
    if let Some(stamp) = &meta.stamp {
        out.push_str(&format!("generated: {stamp}\n"));
    }
    out.push('\n');
    for r in report.indicators() {
        out.push_str(&format!(
            "{:4} {}: {}/{} = {}\n",
            r.id,
            r.label,
            r.proportion.k,
            r.proportion.n,
            pct_cell(r)
        ));
    }

    let split = &report.ontology_split;
    out.push_str(&format!(
        "\nstances in the lived-change group: material {}, immaterial {}, unsure {}\n",
        split.material, split.immaterial, split.unsure
    ));
    let ct = &report.crosstab;
    out.push_str(&format!(
        "self-examination x stance: exam/immaterial {}, exam/other {}, none/immaterial {}, none/other {}\n",
        ct.a, ct.b, ct.c, ct.d
    ));
    let assoc = &report.association;
    if assoc.degenerate {
        out.push_str("association: degenerate table; conventional summary p = 1, interval 0 to unbounded\n");
    } else {
        out.push_str(&format!("sample odds ratio: {}\n", assoc.sample_or));
        out.push_str(&format!(
            "exact conditional CI: {} to {}\n",
            fmt_or_bound(assoc.or_ci_low),
            fmt_or_bound(assoc.or_ci_high)
        ));
        out.push_str(&format!(
            "Fisher exact p (two-sided): {:.4e}\n",
            assoc.p_two_sided
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    source: &'a str,
    rows_read: usize,
    responses: usize,
    dropped: usize,
    stamp: Option<&'a str>,
    confidence: f64,
    thresholds: JsonThresholds,
    indicators: Vec<JsonIndicator<'a>>,
    ontology_split: JsonSplit,
    crosstab: JsonCrosstab,
    association: JsonAssociation,
}

#[derive(Serialize)]
struct JsonThresholds {
    skill_cut: u8,
    contribution_cut: u8,
    text_gate: usize,
    canonical: bool,
}

#[derive(Serialize)]
struct JsonIndicator<'a> {
    id: &'static str,
    label: &'static str,
    k: u64,
    n: u64,
    share: f64,
    ci_low: f64,
    ci_high: f64,
    pct: i64,
    pct_low: i64,
    pct_high: i64,
    denominator_ids: Vec<&'a str>,
    numerator_ids: Vec<&'a str>,
}

#[derive(Serialize)]
struct JsonSplit {
    material: u64,
    immaterial: u64,
    unsure: u64,
}

#[derive(Serialize)]
struct JsonCrosstab {
    exam_immaterial: u32,
    exam_other: u32,
    none_immaterial: u32,
    none_other: u32,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum JsonOddsRatio {
    Finite {
        numerator: u64,
        denominator: u64,
        value: f64,
    },
    Infinite,
    Undefined,
}

#[derive(Serialize)]
struct JsonAssociation {
    sample_or: JsonOddsRatio,
    or_ci_low: f64,
    /// Null when the interval is unbounded above.
    or_ci_high: Option<f64>,
    p_two_sided: f64,
    degenerate: bool,
}

/// JSON rendering with the full audit payload, pretty-printed with a
/// trailing newline.
pub fn render_json(report: &AnalysisReport, meta: &ReportMeta) -> String {
    let o = &report.options;
    let t = &o.thresholds;
    let indicators = report
        .indicators()
        .iter()
        .map(|r| JsonIndicator {
            id: r.id,
            label: r.label,
            k: r.proportion.k,
            n: r.proportion.n,
            share: r.proportion.p_hat,
            ci_low: r.proportion.ci_low,
            ci_high: r.proportion.ci_high,
            pct: rounded_pct(r.proportion.p_hat),
            pct_low: rounded_pct(r.proportion.ci_low),
            pct_high: rounded_pct(r.proportion.ci_high),
            denominator_ids: r.denominator_ids.iter().map(|id| id.as_str()).collect(),
            numerator_ids: r.numerator_ids.iter().map(|id| id.as_str()).collect(),
        })
        .collect();
    let assoc = &report.association;
    let payload = JsonReport {
        source: &meta.source,
        rows_read: meta.rows_read,
        responses: meta.responses,
        dropped: meta.dropped,
        stamp: meta.stamp.as_deref(),
        confidence: o.confidence,
        thresholds: JsonThresholds {
            skill_cut: t.skill_cut,
            contribution_cut: t.contribution_cut,
            text_gate: t.text_gate,
            canonical: t.is_canonical(),
        },
        indicators,
        ontology_split: JsonSplit {
            material: report.ontology_split.material,
            immaterial: report.ontology_split.immaterial,
            unsure: report.ontology_split.unsure,
        },
        crosstab: JsonCrosstab {
            exam_immaterial: report.crosstab.a,
            exam_other: report.crosstab.b,
            none_immaterial: report.crosstab.c,
            none_other: report.crosstab.d,
        },
        association: JsonAssociation {
            sample_or: match assoc.sample_or {
                OddsRatio::Finite {
                    numerator,
                    denominator,
                    value,
                } => JsonOddsRatio::Finite {
                    numerator,
                    denominator,
                    value,
                },
                OddsRatio::Infinite => JsonOddsRatio::Infinite,
                OddsRatio::Undefined => JsonOddsRatio::Undefined,
            },
            or_ci_low: assoc.or_ci_low,
            or_ci_high: assoc.or_ci_high.is_finite().then_some(assoc.or_ci_high),
            p_two_sided: assoc.p_two_sided,
            degenerate: assoc.degenerate,
        },
    };
    let mut s = serde_json::to_string_pretty(&payload).expect("report serializes");
    s.push('\n');
    s
}
