//! Exact conditional confidence interval for the odds ratio.
//!
//! Conditioning a 2x2 table on both margins leaves the top-left cell
//! distributed as Fisher's noncentral hypergeometric with weight
//! `C(r1, x) C(r2, c1 - x) psi^x`, where `psi` is the odds ratio. The exact
//! interval inverts the two tail tests: the lower endpoint is the `psi`
//! whose upper tail at the observed cell equals `alpha / 2`, the upper
//! endpoint the `psi` whose lower tail does. Both tails are strictly
//! monotone in `psi`, so bisection on `ln psi` is safe.

use super::fisher::Support;
use super::logfact::LogFactorials;
use super::{CrossTab2x2, StatsError};

/// Multiplicative bracketing step, `ln 16`.
const STEP: f64 = 2.772588722239781;
/// Bisection width on `ln psi`; the endpoint is resolved to about this
/// relative tolerance on `psi`.
const LN_PSI_TOL: f64 = 1e-9;

/// Conditional distribution of the top-left cell given both margins.
pub(crate) struct Conditional {
    lo: u64,
    /// `ln C(r1, x) + ln C(r2, c1 - x)` for `x` in `lo..=hi`.
    base_ln: Vec<f64>,
}

impl Conditional {
    pub fn of(t: &CrossTab2x2) -> Result<Conditional, StatsError> {
        let s = Support::of(t)?;
        let lf = LogFactorials::up_to(s.n as usize);
        let base_ln = (s.lo..=s.hi)
            .map(|x| lf.ln_choose(s.r1, x).add(lf.ln_choose(s.r2, s.c1 - x)).to_f64())
            .collect();
        Ok(Conditional { lo: s.lo, base_ln })
    }

    pub fn support(&self) -> (u64, u64) {
        (self.lo, self.lo + self.base_ln.len() as u64 - 1)
    }

    /// Normalized tail mass. `upper` selects `P(X >= at)`, otherwise
    /// `P(X <= at)`. Weights are max-shifted in log space first, so the sum
    /// never overflows however extreme `psi` becomes.
    fn tail(&self, ln_psi: f64, at: u64, upper: bool) -> f64 {
        let ln_w: Vec<f64> = self
            .base_ln
            .iter()
            .enumerate()
            .map(|(i, &b)| b + (self.lo + i as u64) as f64 * ln_psi)
            .collect();
        let m = ln_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let mut num = 0.0;
        let mut den = 0.0;
        for (i, &lw) in ln_w.iter().enumerate() {
            let x = self.lo + i as u64;
            let e = (lw - m).exp();
            den += e;
            if (upper && x >= at) || (!upper && x <= at) {
                num += e;
            }
        }
        num / den
    }
}

/// Exact conditional (Cornfield-style) confidence interval for the odds
/// ratio of a 2x2 table.
///
/// When the observed cell sits at an end of its support the matching
/// endpoint is exactly 0 or positive infinity; no search is attempted there.
pub fn exact_or_ci(t: &CrossTab2x2, confidence: f64) -> Result<(f64, f64), StatsError> {
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(StatsError::domain(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }
    let cond = Conditional::of(t)?;
    let (lo, hi) = cond.support();
    let alpha = (1.0 - confidence) / 2.0;
    let a = u64::from(t.a);

    let ci_low = if a == lo {
        0.0
    } else {
        // Upper tail rises with psi; find where it crosses alpha.
        solve_ln_psi(|x| cond.tail(x, a, true) - alpha)
    };
    let ci_high = if a == hi {
        f64::INFINITY
    } else {
        // Lower tail falls with psi; negate to get a rising crossing.
        solve_ln_psi(|x| alpha - cond.tail(x, a, false))
    };
    Ok((ci_low, ci_high))
}

/// Root of a function of `ln psi` that is negative left of the root and
/// positive right of it. Brackets by stepping out from `psi = 1`, then
/// bisects.
fn solve_ln_psi(g: impl Fn(f64) -> f64) -> f64 {
    let (mut lo, mut hi);
    if g(0.0) < 0.0 {
        lo = 0.0;
        hi = STEP;
        while g(hi) <= 0.0 {
            lo = hi;
            hi += STEP;
            assert!(hi < 600.0, "failed to bracket the upper crossing");
        }
    } else {
        hi = 0.0;
        lo = -STEP;
        while g(lo) >= 0.0 {
            hi = lo;
            lo -= STEP;
            assert!(lo > -600.0, "failed to bracket the lower crossing");
        }
    }
    while hi - lo > LN_PSI_TOL {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (0.5 * (lo + hi)).exp()
}
