//! Wilson score interval for a binomial proportion.

use super::normal::inverse_normal_cdf;
use super::{Proportion, StatsError};

/// Wilson score interval for `k` successes out of `n`.
///
/// The endpoints are the two roots of
/// `(p_hat - p)^2 = z^2 p (1 - p) / n`,
/// evaluated in the standard closed form. Degenerate counts pin the matching
/// endpoint exactly: `k = 0` gives a lower bound of 0 and `k = n` an upper
/// bound of 1, so boundary certainty is never blurred by rounding.
pub fn wilson_ci(k: u64, n: u64, confidence: f64) -> Result<Proportion, StatsError> {
    if n == 0 {
        return Err(StatsError::domain("n must be positive"));
    }
    if k > n {
        return Err(StatsError::domain(format!("k = {k} exceeds n = {n}")));
    }
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(StatsError::domain(format!(
            "confidence must lie in (0, 1), got {confidence}"
        )));
    }

    let z = inverse_normal_cdf(0.5 + confidence / 2.0);
    let nf = n as f64;
    let p_hat = k as f64 / nf;
    let z2n = z * z / nf;
    let center = (p_hat + z2n / 2.0) / (1.0 + z2n);
    let half = (z / (1.0 + z2n)) * (p_hat * (1.0 - p_hat) / nf + z2n / (4.0 * nf)).sqrt();

    let ci_low = if k == 0 { 0.0 } else { (center - half).max(0.0) };
    let ci_high = if k == n { 1.0 } else { (center + half).min(1.0) };

    Ok(Proportion {
        k,
        n,
        p_hat,
        ci_low,
        ci_high,
        confidence,
    })
}
