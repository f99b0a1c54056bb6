//! Recoding of validated responses into the pre-specified boolean signals
//! that the indicator analyses filter and count.

use crate::model::{
    AdaptFrequency, ExamPolicy, IntellectView, PromptSharing, Response, ToolDifference,
    YesNoUnsure,
};

/// Dichotomization cut points. The defaults are the registered, canonical
/// cuts; anything else exists only for sensitivity probes and is watermarked
/// in every report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    /// item1a must be strictly above this to count as AI-skilled.
    pub skill_cut: u8,
    /// item1c at or above this counts as high contribution.
    pub contribution_cut: u8,
    /// item10 with at least this many Unicode scalar values counts as a
    /// substantive reflection.
    pub text_gate: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            skill_cut: 5,
            contribution_cut: 66,
            text_gate: 20,
        }
    }
}

impl Thresholds {
    pub fn is_canonical(&self) -> bool {
        *self == Thresholds::default()
    }

    /// Cuts must lie inside the ranges of the items they dichotomize.
    pub fn validate(&self) -> Result<(), ThresholdError> {
        if self.skill_cut > 10 {
            return Err(ThresholdError {
                what: format!("skill cut {} is outside 0..=10", self.skill_cut),
            });
        }
        if self.contribution_cut > 100 {
            return Err(ThresholdError {
                what: format!("contribution cut {} is outside 0..=100", self.contribution_cut),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid threshold: {what}")]
pub struct ThresholdError {
    what: String,
}

/// Boolean signals derived from one response. Names describe the role each
/// signal plays downstream, not the wording of the item it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signals {
    /// item1a strictly above the skill cut.
    pub ai_skilled: bool,
    /// item1b is Always or Frequently.
    pub high_control: bool,
    /// item1c at or above the contribution cut; absent exactly when the
    /// respondent never adapts AI output and so was never asked.
    pub high_contribution: Option<bool>,
    /// item2 = Yes: would let AI teach their own course material.
    pub teaching_value: bool,
    /// item4 = Yes: confident they could detect AI-written student work.
    pub detection_confidence: bool,
    /// Conjunction of `ai_skilled`, `teaching_value`, `detection_confidence`:
    /// the screen for respondents with first-hand capacity to judge.
    pub capacity_gate: bool,
    /// item3 = FullyAllow.
    pub fully_allow: bool,
    /// item5 = Yes: sees the tool as a challenge to their discipline.
    pub discipline_challenge: bool,
    /// item6 = Yes: the tool changed how they work.
    pub practice_change: bool,
    /// item7 = InKind.
    pub in_kind: bool,
    /// Conjunction of `in_kind` and `practice_change`: the screen for
    /// respondents whose stance on the tool is grounded in lived change.
    pub ontology_gate: bool,
    /// Unicode scalar count of the trimmed reflection text, 0 when absent.
    pub reflection_len: usize,
    /// item8 = Yes, or a reflection at or above the text gate: evidence the
    /// respondent has examined their own prompting practice.
    pub metacognition: bool,
    /// item9 = Immaterial.
    pub immaterial: bool,
}

/// Derives signals under the canonical thresholds.
pub fn derive_signals(r: &Response) -> Signals {
    derive_signals_with(r, &Thresholds::default())
}

/// Derives signals under the given thresholds.
pub fn derive_signals_with(r: &Response, t: &Thresholds) -> Signals {
    let s = r.scales();

    let ai_skilled = s.item1a() > t.skill_cut;
    let high_control = matches!(
        s.item1b(),
        AdaptFrequency::Always | AdaptFrequency::Frequently
    );
    let high_contribution = s.item1c().map(|c| c >= t.contribution_cut);
    let teaching_value = s.item2() == YesNoUnsure::Yes;
    let detection_confidence = s.item4() == YesNoUnsure::Yes;
    let capacity_gate = ai_skilled && teaching_value && detection_confidence;
    let fully_allow = s.item3() == ExamPolicy::FullyAllow;
    let discipline_challenge = s.item5() == YesNoUnsure::Yes;
    let practice_change = s.item6() == YesNoUnsure::Yes;
    let in_kind = s.item7() == ToolDifference::InKind;
    let ontology_gate = in_kind && practice_change;
    let reflection_len = s.item10().map_or(0, |t| t.trim().chars().count());
    let metacognition = s.item8() == PromptSharing::Yes || reflection_len >= t.text_gate;
    let immaterial = s.item9() == IntellectView::Immaterial;

    Signals {
        ai_skilled,
        high_control,
        high_contribution,
        teaching_value,
        detection_confidence,
        capacity_gate,
        fully_allow,
        discipline_challenge,
        practice_change,
        in_kind,
        ontology_gate,
        reflection_len,
        metacognition,
        immaterial,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ItemDraft, ItemScales, Lang, RespondentId};

    fn draft() -> ItemDraft {
        ItemDraft {
            item1a: 7,
            item1b: AdaptFrequency::Frequently,
            item1c: Some(70),
            item2: YesNoUnsure::Yes,
            item3: ExamPolicy::FullyAllow,
            item4: YesNoUnsure::Yes,
            item5: YesNoUnsure::Yes,
            item6: YesNoUnsure::Yes,
            item7: ToolDifference::InKind,
            item8: PromptSharing::Yes,
            item9: IntellectView::Immaterial,
            item10: Some("this tool reshaped my seminar prep".into()),
        }
    }

    fn response(d: ItemDraft) -> Response {
        let (scales, _) = ItemScales::from_draft(d).unwrap();
        Response::new(RespondentId::new("t"), Lang::En, scales)
    }

    #[test]
    fn skill_cut_is_strict() {
        let mut d = draft();
        d.item1a = 5;
        assert!(!derive_signals(&response(d)).ai_skilled);
        let mut d = draft();
        d.item1a = 6;
        assert!(derive_signals(&response(d)).ai_skilled);
    }

    #[test]
    fn contribution_cut_is_inclusive() {
        let mut d = draft();
        d.item1c = Some(65);
        assert_eq!(derive_signals(&response(d)).high_contribution, Some(false));
        let mut d = draft();
        d.item1c = Some(66);
        assert_eq!(derive_signals(&response(d)).high_contribution, Some(true));
    }

    #[test]
    fn high_control_splits_the_frequency_scale_in_the_middle() {
        for (freq, want) in [
            (AdaptFrequency::Always, true),
            (AdaptFrequency::Frequently, true),
            (AdaptFrequency::Sometimes, false),
        ] {
            let mut d = draft();
            d.item1b = freq;
            assert_eq!(derive_signals(&response(d)).high_control, want, "{freq:?}");
        }
    }

    #[test]
    fn never_adapting_leaves_contribution_unobserved() {
        let mut d = draft();
        d.item1b = AdaptFrequency::Never;
        d.item1c = None;
        let s = derive_signals(&response(d));
        assert!(!s.high_control);
        assert_eq!(s.high_contribution, None);
    }

    #[test]
    fn capacity_gate_requires_all_three_legs() {
        assert!(derive_signals(&response(draft())).capacity_gate);
        for flip in 0..3 {
            let mut d = draft();
            match flip {
                0 => d.item1a = 5,
                1 => d.item2 = YesNoUnsure::Unsure,
                _ => d.item4 = YesNoUnsure::No,
            }
            assert!(!derive_signals(&response(d)).capacity_gate, "leg {flip}");
        }
    }

    #[test]
    fn text_gate_counts_unicode_scalars_after_trimming() {
        // 19 scalars: below the gate.
        let mut d = draft();
        d.item8 = PromptSharing::No;
        d.item10 = Some("  ".to_string() + &"あ".repeat(19) + " ");
        let s = derive_signals(&response(d));
        assert_eq!(s.reflection_len, 19);
        assert!(!s.metacognition);

        // 20 scalars: at the gate.
        let mut d = draft();
        d.item8 = PromptSharing::No;
        d.item10 = Some("あ".repeat(20));
        let s = derive_signals(&response(d));
        assert_eq!(s.reflection_len, 20);
        assert!(s.metacognition);
    }

    #[test]
    fn prompt_sharing_yes_is_metacognition_regardless_of_text() {
        let mut d = draft();
        d.item8 = PromptSharing::Yes;
        d.item10 = None;
        assert!(derive_signals(&response(d)).metacognition);
    }

    #[test]
    fn ontology_gate_needs_both_kind_and_change() {
        let mut d = draft();
        d.item6 = YesNoUnsure::No;
        assert!(!derive_signals(&response(d)).ontology_gate);
        let mut d = draft();
        d.item7 = ToolDifference::OnlyDegree;
        assert!(!derive_signals(&response(d)).ontology_gate);
    }

    #[test]
    fn custom_thresholds_shift_the_cuts() {
        let t = Thresholds {
            skill_cut: 7,
            contribution_cut: 50,
            text_gate: 5,
        };
        let mut d = draft();
        d.item1a = 7;
        d.item1c = Some(50);
        d.item8 = PromptSharing::No;
        d.item10 = Some("short".into());
        let s = derive_signals_with(&response(d), &t);
        assert!(!s.ai_skilled);
        assert_eq!(s.high_contribution, Some(true));
        assert!(s.metacognition);
    }

    #[test]
    fn threshold_validation_rejects_out_of_range_cuts() {
        assert!(Thresholds::default().validate().is_ok());
        let bad = Thresholds {
            skill_cut: 11,
            ..Thresholds::default()
        };
        assert!(bad.validate().is_err());
        let bad = Thresholds {
            contribution_cut: 101,
            ..Thresholds::default()
        };
        assert!(bad.validate().is_err());
    }
}
