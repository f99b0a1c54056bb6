//! Fisher's exact test for 2x2 tables.

use super::logfact::LogFactorials;
use super::{CrossTab2x2, StatsError};

/// Relative slack when deciding whether an arrangement's point probability
/// ties the observed one. Absorbs rounding in the log-space weights so exact
/// ties (which occur for symmetric margins) are never split by an ulp.
pub(crate) const TIE_SLACK: f64 = 1e-7;

/// Margins of a table and the support of its top-left cell.
pub(crate) struct Support {
    pub r1: u64,
    pub r2: u64,
    pub c1: u64,
    pub n: u64,
    pub lo: u64,
    pub hi: u64,
}

impl Support {
    pub fn of(t: &CrossTab2x2) -> Result<Support, StatsError> {
        let (r1, r2) = (u64::from(t.a) + u64::from(t.b), u64::from(t.c) + u64::from(t.d));
        let (c1, c2) = (u64::from(t.a) + u64::from(t.c), u64::from(t.b) + u64::from(t.d));
        if r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0 {
            return Err(StatsError::DegenerateTable);
        }
        Ok(Support {
            r1,
            r2,
            c1,
            n: r1 + r2,
            lo: c1.saturating_sub(r2),
            hi: r1.min(c1),
        })
    }
}

/// Two-sided Fisher exact p-value by point-probability ordering: the sum of
/// hypergeometric probabilities over every arrangement of the margins whose
/// point probability does not exceed the observed one (within [`TIE_SLACK`]).
///
/// Errors with [`StatsError::DegenerateTable`] when a margin is zero, since
/// the conditional distribution collapses to a single arrangement.
pub fn fisher_exact_two_sided(t: &CrossTab2x2) -> Result<f64, StatsError> {
    let s = Support::of(t)?;
    let lf = LogFactorials::up_to(s.n as usize);
    let ln_total = lf.ln_choose(s.n, s.c1);
    let ln_point = |x: u64| {
        lf.ln_choose(s.r1, x)
            .add(lf.ln_choose(s.r2, s.c1 - x))
            .sub(ln_total)
            .to_f64()
    };

    let p_obs = ln_point(u64::from(t.a)).exp();
    let cutoff = p_obs * (1.0 + TIE_SLACK);
    let mut p = 0.0;
    for x in s.lo..=s.hi {
        let px = ln_point(x).exp();
        if px <= cutoff {
            p += px;
        }
    }
    Ok(p.min(1.0))
}
