//! Exact small-sample statistics: Wilson score intervals, Fisher's exact
//! test, and exact conditional odds-ratio intervals.
//!
//! Everything here is deterministic and closed over the standard library;
//! the only transcendental inputs are `ln` and `exp`.

mod fisher;
mod logfact;
mod noncentral;
mod normal;
mod wilson;

pub use fisher::fisher_exact_two_sided;
pub use noncentral::exact_or_ci;
pub use normal::inverse_normal_cdf;
pub use wilson::wilson_ci;

/// A proportion with its Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Proportion {
    pub k: u64,
    pub n: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub confidence: f64,
}

/// A 2x2 contingency table with at least one observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CrossTab2x2 {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
}

impl CrossTab2x2 {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Result<Self, StatsError> {
        if a == 0 && b == 0 && c == 0 && d == 0 {
            return Err(StatsError::domain("table has no observations"));
        }
        Ok(CrossTab2x2 { a, b, c, d })
    }

    pub fn total(&self) -> u64 {
        u64::from(self.a) + u64::from(self.b) + u64::from(self.c) + u64::from(self.d)
    }

    /// True when a row or column margin is zero, collapsing the conditional
    /// distribution to a point.
    pub fn degenerate(&self) -> bool {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        a + b == 0 || c + d == 0 || a + c == 0 || b + d == 0
    }
}

/// Sample odds ratio `ad / bc`, kept as an integer ratio so reports can show
/// it without rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OddsRatio {
    Finite {
        numerator: u64,
        denominator: u64,
        value: f64,
    },
    /// `ad > 0` with `bc = 0`.
    Infinite,
    /// `ad = bc = 0`: the ratio carries no information.
    Undefined,
}

impl OddsRatio {
    pub fn value(&self) -> Option<f64> {
        match *self {
            OddsRatio::Finite { value, .. } => Some(value),
            OddsRatio::Infinite => Some(f64::INFINITY),
            OddsRatio::Undefined => None,
        }
    }
}

impl std::fmt::Display for OddsRatio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OddsRatio::Finite {
                numerator,
                denominator,
                value,
            } => write!(f, "{numerator}/{denominator} = {value:.6}"),
            OddsRatio::Infinite => f.write_str("infinite"),
            OddsRatio::Undefined => f.write_str("undefined"),
        }
    }
}

/// Sample odds ratio of a table. Total separation yields the `Infinite` or
/// `Undefined` sentinels rather than an error.
pub fn odds_ratio(t: &CrossTab2x2) -> OddsRatio {
    let numerator = u64::from(t.a) * u64::from(t.d);
    let denominator = u64::from(t.b) * u64::from(t.c);
    match (numerator, denominator) {
        (0, 0) => OddsRatio::Undefined,
        (_, 0) => OddsRatio::Infinite,
        _ => OddsRatio::Finite {
            numerator,
            denominator,
            value: numerator as f64 / denominator as f64,
        },
    }
}

/// Association evidence for a 2x2 table: sample odds ratio, exact conditional
/// interval, and two-sided Fisher p-value.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactAssociation {
    pub sample_or: OddsRatio,
    pub or_ci_low: f64,
    /// Positive infinity when the interval is unbounded above.
    pub or_ci_high: f64,
    pub p_two_sided: f64,
    /// A margin was zero. The test is vacuous there, so the conventional
    /// values p = 1 and an interval of (0, infinity) are reported instead of
    /// failing the whole analysis.
    pub degenerate: bool,
}

/// Runs the full association battery on a table, mapping degenerate margins
/// to their conventional no-evidence summary.
pub fn exact_association(t: &CrossTab2x2, confidence: f64) -> Result<ExactAssociation, StatsError> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(StatsError::domain(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }
    let sample_or = odds_ratio(t);
    match fisher_exact_two_sided(t) {
        Ok(p_two_sided) => {
            let (or_ci_low, or_ci_high) = exact_or_ci(t, confidence)?;
            Ok(ExactAssociation {
                sample_or,
                or_ci_low,
                or_ci_high,
                p_two_sided,
                degenerate: false,
            })
        }
        Err(StatsError::DegenerateTable) => Ok(ExactAssociation {
            sample_or,
            or_ci_low: 0.0,
            or_ci_high: f64::INFINITY,
            p_two_sided: 1.0,
            degenerate: true,
        }),
        Err(e) => Err(e),
    }
}

/// Statistical preconditions that cannot be satisfied.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StatsError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate table: a row or column margin is zero")]
    DegenerateTable,
}

impl StatsError {
    fn domain(msg: impl Into<String>) -> Self {
        StatsError::Domain(msg.into())
    }
}
