//! Direct evaluation of the noncentral hypergeometric distribution that
//! underlies the exact odds-ratio interval, plus the conditional MLE.
//!
//! Weights come from exact integer binomials converted once to f64; powers
//! of the odds ratio are applied in log space with max-shifting. This is a
//! straight summation route, independent of the interval inversion it
//! checks.

use num_traits::ToPrimitive;

use crate::binomial;

/// The conditional distribution of the top-left cell for fixed margins.
pub struct Weights {
    lo: u64,
    hi: u64,
    ln_base: Vec<f64>,
}

impl Weights {
    /// `None` when a margin is zero.
    pub fn of(a: u64, b: u64, c: u64, d: u64) -> Option<Weights> {
        let (r1, r2, c1, c2) = (a + b, c + d, a + c, b + d);
        if r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0 {
            return None;
        }
        let lo = c1.saturating_sub(r2);
        let hi = r1.min(c1);
        let ln_base = (lo..=hi)
            .map(|x| {
                let w = binomial(r1, x) * binomial(r2, c1 - x);
                w.to_f64().expect("weight fits in f64 for tested sizes").ln()
            })
            .collect();
        Some(Weights { lo, hi, ln_base })
    }

    pub fn support(&self) -> (u64, u64) {
        (self.lo, self.hi)
    }

    fn shifted(&self, psi: f64) -> Vec<f64> {
        let ln_psi = psi.ln();
        let ln_w: Vec<f64> = self
            .ln_base
            .iter()
            .enumerate()
            .map(|(i, &b)| b + (self.lo + i as u64) as f64 * ln_psi)
            .collect();
        let m = ln_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        ln_w.into_iter().map(|lw| (lw - m).exp()).collect()
    }

    /// `P(X >= at)` under odds ratio `psi`.
    pub fn upper_tail(&self, psi: f64, at: u64) -> f64 {
        let w = self.shifted(psi);
        let total: f64 = w.iter().sum();
        let tail: f64 = w
            .iter()
            .enumerate()
            .filter(|(i, _)| self.lo + *i as u64 >= at)
            .map(|(_, &e)| e)
            .sum();
        tail / total
    }

    /// `P(X <= at)` under odds ratio `psi`.
    pub fn lower_tail(&self, psi: f64, at: u64) -> f64 {
        let w = self.shifted(psi);
        let total: f64 = w.iter().sum();
        let tail: f64 = w
            .iter()
            .enumerate()
            .filter(|(i, _)| self.lo + *i as u64 <= at)
            .map(|(_, &e)| e)
            .sum();
        tail / total
    }

    /// `E[X]` under odds ratio `psi`.
    pub fn mean(&self, psi: f64) -> f64 {
        let w = self.shifted(psi);
        let total: f64 = w.iter().sum();
        let weighted: f64 = w
            .iter()
            .enumerate()
            .map(|(i, &e)| (self.lo + i as u64) as f64 * e)
            .sum();
        weighted / total
    }
}

/// Conditional maximum-likelihood estimate of the odds ratio: the `psi`
/// whose conditional mean equals the observed cell. `None` when the cell
/// sits at an edge of its support (the MLE diverges) or a margin is zero.
pub fn conditional_mle(a: u64, b: u64, c: u64, d: u64) -> Option<f64> {
    let w = Weights::of(a, b, c, d)?;
    let (lo, hi) = w.support();
    if a == lo || a == hi {
        return None;
    }
    // The mean rises from lo to hi as psi sweeps (0, inf); bisect on ln psi.
    let target = a as f64;
    let (mut left, mut right) = (0.0f64, 0.0f64);
    while w.mean(left.exp()) >= target {
        left -= 2.0;
        assert!(left > -700.0, "mean never fell below the target");
    }
    while w.mean(right.exp()) <= target {
        right += 2.0;
        assert!(right < 700.0, "mean never rose above the target");
    }
    for _ in 0..200 {
        let mid = 0.5 * (left + right);
        if w.mean(mid.exp()) < target {
            left = mid;
        } else {
            right = mid;
        }
    }
    Some((0.5 * (left + right)).exp())
}
