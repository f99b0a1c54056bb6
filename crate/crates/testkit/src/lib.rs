//! Independent oracles for exercising voidgauge.
//!
//! Everything here recomputes results by a deliberately different route from
//! the library under test: exact integer binomials instead of log-factorial
//! tables, direct weight sums instead of inverted tail tests, and field-level
//! recounts instead of the recode layer. Agreement between the two routes is
//! what the test suites assert.

pub mod cases;
pub mod fisher;
pub mod naive;
pub mod noncentral;

use num_bigint::BigUint;

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        // Exact at every step: acc holds C(n, i-1), and C(n, i-1) * (n-k+i)
        // is divisible by i.
        acc = acc * (n - k + i) / i;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_match_known_values() {
        assert_eq!(binomial(0, 0), BigUint::from(1u32));
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(52, 5), BigUint::from(2_598_960u32));
        assert_eq!(binomial(3, 7), BigUint::from(0u32));
        // C(60, 30) needs more than 64 bits of headroom during the product.
        assert_eq!(
            binomial(60, 30).to_string(),
            "118264581564861424"
        );
    }

    #[test]
    fn pascal_identity_holds() {
        for n in 1..=25u64 {
            for k in 1..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k)
                );
            }
        }
    }
}
