//! Enumeration oracle for the two-sided Fisher exact test.
//!
//! Weights are exact integers, the tie rule is applied in exact rational
//! arithmetic, and only the final ratio is rounded to f64. No logarithms and
//! no shared code with the implementation under test.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::binomial;

/// Two-sided p by full enumeration: sum the hypergeometric probabilities of
/// every arrangement whose exact weight `w_x` satisfies
/// `w_x * 10^7 <= w_obs * (10^7 + 1)`, the integer form of the
/// implementation's relative tie slack. `None` when a margin is zero.
pub fn two_sided_p(a: u64, b: u64, c: u64, d: u64) -> Option<f64> {
    let (r1, r2, c1, c2) = (a + b, c + d, a + c, b + d);
    if r1 == 0 || r2 == 0 || c1 == 0 || c2 == 0 {
        return None;
    }
    let lo = c1.saturating_sub(r2);
    let hi = r1.min(c1);

    let weight = |x: u64| binomial(r1, x) * binomial(r2, c1 - x);
    let w_obs = weight(a);
    let slack_num = BigUint::from(10_000_001u64);
    let slack_den = BigUint::from(10_000_000u64);

    let mut qualifying = BigUint::from(0u32);
    let mut total = BigUint::from(0u32);
    for x in lo..=hi {
        let w = weight(x);
        if &w * &slack_den <= &w_obs * &slack_num {
            qualifying += &w;
        }
        total += w;
    }
    Some(big_ratio(&qualifying, &total))
}

/// Two-sided p for every table sharing row sums `r1`, `r2` and first-column
/// sum `c1` (so `c2 = r1 + r2 - c1`), indexed by `a - max(0, c1 - r2)`.
/// Shares the weight vector across the whole margin class, which makes
/// exhaustive sweeps tractable; the tie rule is identical to `two_sided_p`.
/// `None` when a margin is zero.
pub fn two_sided_by_margins(r1: u64, r2: u64, c1: u64) -> Option<Vec<f64>> {
    let n = r1 + r2;
    assert!(c1 <= n, "column sum exceeds the grand total");
    if r1 == 0 || r2 == 0 || c1 == 0 || c1 == n {
        return None;
    }
    let lo = c1.saturating_sub(r2);
    let hi = r1.min(c1);
    let weights: Vec<BigUint> = (lo..=hi)
        .map(|x| binomial(r1, x) * binomial(r2, c1 - x))
        .collect();
    let total: BigUint = weights.iter().sum();
    let slack_num = BigUint::from(10_000_001u64);
    let slack_den = BigUint::from(10_000_000u64);

    let ps = weights
        .iter()
        .map(|w_obs| {
            let bar = w_obs * &slack_num;
            let mut qualifying = BigUint::from(0u32);
            for w in &weights {
                if w * &slack_den <= bar {
                    qualifying += w;
                }
            }
            big_ratio(&qualifying, &total)
        })
        .collect();
    Some(ps)
}

/// `num / den` as f64, scaling both sides down together so the conversion
/// never saturates.
pub(crate) fn big_ratio(num: &BigUint, den: &BigUint) -> f64 {
    // Keep at most 110 significant bits of each; the ratio of the rounded
    // parts is within a couple of ulps of the exact ratio.
    let bits = num.bits().max(den.bits());
    let shift = bits.saturating_sub(110);
    let n = (num >> shift).to_f64().expect("fits after shift");
    let d = (den >> shift).to_f64().expect("fits after shift");
    n / d
}
