//! Coherence rubric for procurement claims.
//!
//! A claim pairs a purpose (what the tool is for) with a strength (whether it
//! is framed as a necessity or a preference), and is judged against the
//! claimant's stated view of the intellect. The rubric asks one question:
//! does the evidence class that the purpose can deliver actually support a
//! necessity claim under that view of the intellect?

use crate::model::IntellectView;

/// What the tool is being procured to do.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Purpose {
    /// Open-ended inquiry: formation of judgment, synthesis, taste.
    Exploration,
    /// Throughput: more output, faster turnaround, wider coverage.
    Scale,
}

impl std::fmt::Display for Purpose {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Purpose::Exploration => "exploration",
            Purpose::Scale => "scale",
        })
    }
}

/// How hard the claim is pressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strength {
    /// "We need this": framed as a requirement.
    Need,
    /// "We want this": framed as a preference.
    Want,
}

impl std::fmt::Display for Strength {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Strength::Need => "need",
            Strength::Want => "want",
        })
    }
}

/// A procurement claim under assessment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Claim {
    /// The claimant's stance on whether intellect reduces to computation.
    pub stance: IntellectView,
    pub purpose: Purpose,
    pub strength: Strength,
}

/// The kind of evidence a purpose can put on the table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvidenceClass {
    /// Measurable throughput, accuracy, and scale gains.
    QuantitativeGains,
    /// Formation of judgment and synthesis; resists quantification.
    FormationOriented,
}

impl std::fmt::Display for EvidenceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EvidenceClass::QuantitativeGains => "quantitative gains",
            EvidenceClass::FormationOriented => "formation-oriented",
        })
    }
}

/// Verdict on a claim's internal coherence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// The claim stands as phrased.
    CoherentAsStated,
    /// The necessity is not supportable under the stated stance; the claim
    /// survives only if softened to a preference.
    DowngradedToWant,
    /// An unsettled stance leaves nothing to test the necessity against.
    NotAssessable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::CoherentAsStated => "coherent as stated",
            Verdict::DowngradedToWant => "downgraded to want",
            Verdict::NotAssessable => "not assessable",
        })
    }
}

/// A classified claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClaimAssessment {
    pub verdict: Verdict,
    /// Quadrant on the purpose-by-strength grid.
    pub quadrant: &'static str,
    /// What kind of evidence the stated purpose can marshal.
    pub evidence_class: EvidenceClass,
}

/// Classifies one claim.
///
/// Want-claims are always coherent: preferences need no proof of necessity.
/// Need-claims are tested against the stance: a materialist pressing a
/// necessity for exploration is claiming formation-oriented value while
/// holding that such value reduces to computable output, which the tool
/// already delivers, so the necessity collapses to a preference. A scale
/// necessity is supportable by quantitative gains under any settled stance.
/// An unsettled stance cannot anchor the test at all.
pub fn classify_claim(claim: &Claim) -> ClaimAssessment {
    let quadrant = match (claim.purpose, claim.strength) {
        (Purpose::Exploration, Strength::Need) => "qualitative need",
        (Purpose::Exploration, Strength::Want) => "qualitative want",
        (Purpose::Scale, Strength::Need) => "quantitative need",
        (Purpose::Scale, Strength::Want) => "quantitative want",
    };
    let evidence_class = match claim.purpose {
        Purpose::Exploration => EvidenceClass::FormationOriented,
        Purpose::Scale => EvidenceClass::QuantitativeGains,
    };
    let verdict = match (claim.stance, claim.strength, claim.purpose) {
        (IntellectView::Unsure, _, _) => Verdict::NotAssessable,
        (_, Strength::Want, _) => Verdict::CoherentAsStated,
        (IntellectView::Material, Strength::Need, Purpose::Exploration) => {
            Verdict::DowngradedToWant
        }
        (IntellectView::Material, Strength::Need, Purpose::Scale) => Verdict::CoherentAsStated,
        (IntellectView::Immaterial, Strength::Need, _) => Verdict::CoherentAsStated,
    };
    ClaimAssessment {
        verdict,
        quadrant,
        evidence_class,
    }
}
