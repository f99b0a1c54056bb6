//! The three pre-registered indicator analyses: filtered prevalences with
//! Wilson intervals, and the association between self-examination and
//! ontological stance inside the lived-change group.

use crate::ingest::Dataset;
use crate::model::{IntellectView, RespondentId, Response};
use crate::recode::{derive_signals_with, Signals, Thresholds};
use crate::stats::{
    exact_association, wilson_ci, CrossTab2x2, ExactAssociation, Proportion, StatsError,
};

/// Knobs shared by every analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalysisOptions {
    pub confidence: f64,
    pub thresholds: Thresholds,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            confidence: 0.95,
            thresholds: Thresholds::default(),
        }
    }
}

/// One filtered prevalence: who was counted, who qualified, and the interval.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorResult {
    /// Stable machine name: "a1", "a2a", "a2b", "a3a", "a3b".
    pub id: &'static str,
    pub label: &'static str,
    pub proportion: Proportion,
    /// Everyone in the denominator, in dataset order.
    pub denominator_ids: Vec<RespondentId>,
    /// The subset meeting the outcome, in dataset order.
    pub numerator_ids: Vec<RespondentId>,
}

/// Stance counts inside the lived-change group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OntologySplit {
    pub material: u64,
    pub immaterial: u64,
    pub unsure: u64,
}

/// Everything the third analysis yields beyond its two prevalences.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis3 {
    pub a3a: IndicatorResult,
    pub a3b: IndicatorResult,
    pub ontology_split: OntologySplit,
    /// Rows: self-examination present / absent. Columns: immaterial stance /
    /// other stance. Population: the lived-change group.
    pub crosstab: CrossTab2x2,
    pub association: ExactAssociation,
}

/// All three analyses over one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub a1: IndicatorResult,
    pub a2a: IndicatorResult,
    pub a2b: IndicatorResult,
    pub a3a: IndicatorResult,
    pub a3b: IndicatorResult,
    pub ontology_split: OntologySplit,
    pub crosstab: CrossTab2x2,
    pub association: ExactAssociation,
    pub options: AnalysisOptions,
}

impl AnalysisReport {
    pub fn indicators(&self) -> [&IndicatorResult; 5] {
        [&self.a1, &self.a2a, &self.a2b, &self.a3a, &self.a3b]
    }
}

#[derive(Debug, thiserror::Error)]
pub enum IndicatorError {
    /// The filter left nobody to count. A prevalence over nobody is not 0,
    /// it is unanswerable, so this is an error rather than a number.
    #[error("empty denominator for {indicator}: {detail}")]
    EmptyDenominator {
        indicator: &'static str,
        detail: &'static str,
    },
    #[error(transparent)]
    Stats(#[from] StatsError),
}

fn signals_of<'d>(ds: &'d Dataset, opts: &AnalysisOptions) -> Vec<(&'d Response, Signals)> {
    ds.responses
        .iter()
        .map(|r| (r, derive_signals_with(r, &opts.thresholds)))
        .collect()
}

fn prevalence(
    id: &'static str,
    label: &'static str,
    detail: &'static str,
    members: impl Iterator<Item = (RespondentId, bool)>,
    confidence: f64,
) -> Result<IndicatorResult, IndicatorError> {
    let mut denominator_ids = Vec::new();
    let mut numerator_ids = Vec::new();
    for (rid, hit) in members {
        if hit {
            numerator_ids.push(rid.clone());
        }
        denominator_ids.push(rid);
    }
    if denominator_ids.is_empty() {
        return Err(IndicatorError::EmptyDenominator {
            indicator: id,
            detail,
        });
    }
    let proportion = wilson_ci(
        numerator_ids.len() as u64,
        denominator_ids.len() as u64,
        confidence,
    )?;
    Ok(IndicatorResult {
        id,
        label,
        proportion,
        denominator_ids,
        numerator_ids,
    })
}

/// Prevalence of full exam permission among respondents who pass the
/// capacity screen (skilled, sees teaching value, trusts own detection).
pub fn analysis1(ds: &Dataset, opts: &AnalysisOptions) -> Result<IndicatorResult, IndicatorError> {
    let rows = signals_of(ds, opts);
    prevalence(
        "a1",
        "capacity screen: fully allow in exams",
        "no respondent passed the capacity screen",
        rows.iter()
            .filter(|(_, s)| s.capacity_gate)
            .map(|(r, s)| (r.id().clone(), s.fully_allow)),
        opts.confidence,
    )
}

/// Two chained prevalences: high contribution among high-control adapters
/// (those with an observed contribution share), then the discipline
/// challenge among the high-contribution group.
pub fn analysis2(
    ds: &Dataset,
    opts: &AnalysisOptions,
) -> Result<(IndicatorResult, IndicatorResult), IndicatorError> {
    let rows = signals_of(ds, opts);
    let a2a = prevalence(
        "a2a",
        "high control: high AI contribution",
        "no high-control respondent has an observed contribution share",
        rows.iter()
            .filter(|(_, s)| s.high_control && s.high_contribution.is_some())
            .map(|(r, s)| (r.id().clone(), s.high_contribution == Some(true))),
        opts.confidence,
    )?;
    let a2b = prevalence(
        "a2b",
        "among high contribution: discipline challenge",
        "nobody reported a high contribution share",
        rows.iter()
            .filter(|(_, s)| s.high_control && s.high_contribution == Some(true))
            .map(|(r, s)| (r.id().clone(), s.discipline_challenge)),
        opts.confidence,
    )?;
    Ok((a2a, a2b))
}

/// Self-examination and stance inside the lived-change group, including the
/// 2x2 association between them.
pub fn analysis3(ds: &Dataset, opts: &AnalysisOptions) -> Result<Analysis3, IndicatorError> {
    let rows = signals_of(ds, opts);
    let gated: Vec<&(&Response, Signals)> =
        rows.iter().filter(|(_, s)| s.ontology_gate).collect();

    let a3a = prevalence(
        "a3a",
        "lived-change group: self-examination present",
        "nobody is in the lived-change group",
        gated.iter().map(|(r, s)| (r.id().clone(), s.metacognition)),
        opts.confidence,
    )?;
    let a3b = prevalence(
        "a3b",
        "among self-examination: immaterial stance",
        "nobody in the lived-change group shows self-examination",
        gated
            .iter()
            .filter(|(_, s)| s.metacognition)
            .map(|(r, s)| (r.id().clone(), s.immaterial)),
        opts.confidence,
    )?;

    let mut split = OntologySplit::default();
    let (mut a, mut b, mut c, mut d) = (0u32, 0u32, 0u32, 0u32);
    for (r, s) in gated.iter() {
        match r.scales().item9() {
            IntellectView::Material => split.material += 1,
            IntellectView::Immaterial => split.immaterial += 1,
            IntellectView::Unsure => split.unsure += 1,
        }
        match (s.metacognition, s.immaterial) {
            (true, true) => a += 1,
            (true, false) => b += 1,
            (false, true) => c += 1,
            (false, false) => d += 1,
        }
    }
    let crosstab = CrossTab2x2::new(a, b, c, d)?;
    debug_assert_eq!(crosstab.total(), a3a.proportion.n);
    let association = exact_association(&crosstab, opts.confidence)?;

    Ok(Analysis3 {
        a3a,
        a3b,
        ontology_split: split,
        crosstab,
        association,
    })
}

/// Runs all three analyses and bundles their results.
pub fn compute_report(ds: &Dataset, opts: &AnalysisOptions) -> Result<AnalysisReport, IndicatorError> {
    let a1 = analysis1(ds, opts)?;
    let (a2a, a2b) = analysis2(ds, opts)?;
    let a3 = analysis3(ds, opts)?;
    Ok(AnalysisReport {
        a1,
        a2a,
        a2b,
        a3a: a3.a3a,
        a3b: a3.a3b,
        ontology_split: a3.ontology_split,
        crosstab: a3.crosstab,
        association: a3.association,
        options: *opts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::Provenance;
    use crate::model::{
        AdaptFrequency, ExamPolicy, ItemDraft, ItemScales, Lang, PromptSharing, ToolDifference,
        YesNoUnsure,
    };

    fn base_draft() -> ItemDraft {
        ItemDraft {
            item1a: 3,
            item1b: AdaptFrequency::Sometimes,
            item1c: Some(10),
            item2: YesNoUnsure::No,
            item3: ExamPolicy::Limit,
            item4: YesNoUnsure::No,
            item5: YesNoUnsure::No,
            item6: YesNoUnsure::No,
            item7: ToolDifference::OnlyDegree,
            item8: PromptSharing::No,
            item9: IntellectView::Material,
            item10: None,
        }
    }

    fn dataset(drafts: Vec<ItemDraft>) -> Dataset {
        let responses = drafts
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let (scales, _) = ItemScales::from_draft(d).unwrap();
                Response::new(RespondentId::new(format!("r{i}")), Lang::En, scales)
            })
            .collect();
        Dataset {
            responses,
            provenance: Provenance::default(),
        }
    }

    fn capacity(allow: bool) -> ItemDraft {
        ItemDraft {
            item1a: 8,
            item2: YesNoUnsure::Yes,
            item4: YesNoUnsure::Yes,
            item3: if allow {
                ExamPolicy::FullyAllow
            } else {
                ExamPolicy::Forbid
            },
            ..base_draft()
        }
    }

    #[test]
    fn analysis1_counts_only_the_screened() {
        let ds = dataset(vec![
            capacity(true),
            capacity(true),
            capacity(false),
            base_draft(), // outside the screen entirely
        ]);
        let r = analysis1(&ds, &AnalysisOptions::default()).unwrap();
        assert_eq!(r.proportion.k, 2);
        assert_eq!(r.proportion.n, 3);
        assert_eq!(r.denominator_ids.len(), 3);
        assert_eq!(r.numerator_ids.len(), 2);
    }

    #[test]
    fn analysis1_errors_on_an_empty_screen() {
        let ds = dataset(vec![base_draft(), base_draft()]);
        let err = analysis1(&ds, &AnalysisOptions::default()).unwrap_err();
        assert!(matches!(
            err,
            IndicatorError::EmptyDenominator { indicator: "a1", .. }
        ));
    }

    fn controlled(contribution: u8, challenge: bool) -> ItemDraft {
        ItemDraft {
            item1b: AdaptFrequency::Always,
            item1c: Some(contribution),
            item5: if challenge {
                YesNoUnsure::Yes
            } else {
                YesNoUnsure::No
            },
            ..base_draft()
        }
    }

    #[test]
    fn analysis2_stages_are_nested() {
        let never = ItemDraft {
            item1b: AdaptFrequency::Never,
            item1c: None,
            ..base_draft()
        };
        let ds = dataset(vec![
            controlled(80, true),
            controlled(70, false),
            controlled(20, true),
            never, // high_contribution unobserved: excluded from both stages
        ]);
        let (a2a, a2b) = analysis2(&ds, &AnalysisOptions::default()).unwrap();
        assert_eq!((a2a.proportion.k, a2a.proportion.n), (2, 3));
        assert_eq!((a2b.proportion.k, a2b.proportion.n), (1, 2));
        assert_eq!(a2b.denominator_ids, a2a.numerator_ids);
    }

    fn gated(meta: bool, view: IntellectView) -> ItemDraft {
        ItemDraft {
            item6: YesNoUnsure::Yes,
            item7: ToolDifference::InKind,
            item8: if meta { PromptSharing::Yes } else { PromptSharing::No },
            item9: view,
            ..base_draft()
        }
    }

    #[test]
    fn analysis3_crosstab_partitions_the_gated_group() {
        let ds = dataset(vec![
            gated(true, IntellectView::Immaterial),
            gated(true, IntellectView::Immaterial),
            gated(true, IntellectView::Material),
            gated(false, IntellectView::Immaterial),
            gated(false, IntellectView::Unsure),
            base_draft(),
        ]);
        let a3 = analysis3(&ds, &AnalysisOptions::default()).unwrap();
        assert_eq!((a3.a3a.proportion.k, a3.a3a.proportion.n), (3, 5));
        assert_eq!((a3.a3b.proportion.k, a3.a3b.proportion.n), (2, 3));
        let t = a3.crosstab;
        assert_eq!((t.a, t.b, t.c, t.d), (2, 1, 1, 1));
        assert_eq!(t.total(), 5);
        assert_eq!(
            a3.ontology_split,
            OntologySplit {
                material: 1,
                immaterial: 3,
                unsure: 1
            }
        );
    }

    #[test]
    fn analysis3_degenerate_association_is_reported_not_fatal() {
        // Everyone in the gated group shows self-examination: one crosstab
        // row is empty, so the test is vacuous but the analysis proceeds.
        let ds = dataset(vec![
            gated(true, IntellectView::Immaterial),
            gated(true, IntellectView::Material),
        ]);
        let a3 = analysis3(&ds, &AnalysisOptions::default()).unwrap();
        assert!(a3.association.degenerate);
        assert_eq!(a3.association.p_two_sided, 1.0);
    }

    #[test]
    fn all_material_gated_group_gives_a3b_zero() {
        let ds = dataset(vec![
            gated(true, IntellectView::Material),
            gated(true, IntellectView::Material),
            gated(false, IntellectView::Material),
        ]);
        let a3 = analysis3(&ds, &AnalysisOptions::default()).unwrap();
        assert_eq!(a3.a3b.proportion.k, 0);
        assert_eq!(a3.a3b.proportion.ci_low, 0.0);
    }

    #[test]
    fn report_is_invariant_to_row_order() {
        let mut drafts = vec![
            capacity(true),
            capacity(false),
            controlled(80, true),
            controlled(20, false),
            gated(true, IntellectView::Immaterial),
            gated(false, IntellectView::Material),
            gated(true, IntellectView::Unsure),
        ];
        let forward = compute_report(&dataset(drafts.clone()), &AnalysisOptions::default());
        drafts.reverse();
        let backward = compute_report(&dataset(drafts), &AnalysisOptions::default());
        let (f, b) = (forward.unwrap(), backward.unwrap());
        for (x, y) in f.indicators().iter().zip(b.indicators().iter()) {
            assert_eq!(x.proportion.k, y.proportion.k);
            assert_eq!(x.proportion.n, y.proportion.n);
            assert_eq!(x.proportion.ci_low, y.proportion.ci_low);
        }
        assert_eq!(f.crosstab, b.crosstab);
    }
}
