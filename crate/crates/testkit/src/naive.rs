//! Field-level recount of every indicator, straight off the answer enums.
//!
//! Deliberately restates the analysis definitions without touching the
//! recode layer, so a recode bug cannot hide from the comparison.

use voidgauge::model::{
    AdaptFrequency, ExamPolicy, IntellectView, PromptSharing, Response, ToolDifference,
    YesNoUnsure,
};

/// k/n pairs for the five prevalences plus the gated crosstab cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NaiveCounts {
    pub a1: (u64, u64),
    pub a2a: (u64, u64),
    pub a2b: (u64, u64),
    pub a3a: (u64, u64),
    pub a3b: (u64, u64),
    /// (exam & immaterial, exam & other, none & immaterial, none & other)
    pub crosstab: (u32, u32, u32, u32),
}

/// Recounts everything with the canonical cuts.
pub fn recount(responses: &[Response]) -> NaiveCounts {
    let mut out = NaiveCounts::default();
    for r in responses {
        let s = r.scales();

        let screened = s.item1a() > 5
            && s.item2() == YesNoUnsure::Yes
            && s.item4() == YesNoUnsure::Yes;
        if screened {
            out.a1.1 += 1;
            if s.item3() == ExamPolicy::FullyAllow {
                out.a1.0 += 1;
            }
        }

        let adapts = matches!(
            s.item1b(),
            AdaptFrequency::Always | AdaptFrequency::Frequently
        );
        if adapts {
            if let Some(share) = s.item1c() {
                out.a2a.1 += 1;
                if share >= 66 {
                    out.a2a.0 += 1;
                    out.a2b.1 += 1;
                    if s.item5() == YesNoUnsure::Yes {
                        out.a2b.0 += 1;
                    }
                }
            }
        }

        let lived_change =
            s.item7() == ToolDifference::InKind && s.item6() == YesNoUnsure::Yes;
        if lived_change {
            out.a3a.1 += 1;
            let reflection = s.item10().map_or(0, |t| t.trim().chars().count());
            let exam = s.item8() == PromptSharing::Yes || reflection >= 20;
            let immaterial = s.item9() == IntellectView::Immaterial;
            if exam {
                out.a3a.0 += 1;
                out.a3b.1 += 1;
                if immaterial {
                    out.a3b.0 += 1;
                }
            }
            match (exam, immaterial) {
                (true, true) => out.crosstab.0 += 1,
                (true, false) => out.crosstab.1 += 1,
                (false, true) => out.crosstab.2 += 1,
                (false, false) => out.crosstab.3 += 1,
            }
        }
    }
    out
}
