//! Centered Gaussian (t-)binomial coefficients.

use num_bigint::BigInt;
use num_traits::One;

use super::QLaurent;

/// The centered t-binomial coefficient
///
/// ```text
///   ( r )     (t^r - t^-r) (t^{r-1} - t^{-(r-1)}) ... (t^{r-p+1} - t^{-(r-p+1)})
///   (   )  =  ---------------------------------------------------------------
///   ( p )_t   (t^p - t^-p) (t^{p-1} - t^{-(p-1)}) ... (t - t^-1)
/// ```
///
/// evaluated at `t = q^{dhalf/2}`. Returns 0 when `p < 0` or `p > r`.
/// The result is always a Laurent polynomial, symmetric under the
/// bar-involution.
pub fn gauss_binom(r: u32, p: i64, dhalf: i64) -> QLaurent {
    if p < 0 || p > r as i64 {
        return QLaurent::zero();
    }
    let p = p as u32;
    if dhalf == 0 {
        // t = 1: the classical binomial coefficient.
        return QLaurent::from_int(classical_binom(r, p));
    }
    // By symmetry, use the smaller lower index.
    let p = p.min(r - p);
    let mut acc = QLaurent::one();
    for i in 1..=p {
        let num = centered_factor(r - p + i, dhalf);
        let den = centered_factor(i, dhalf);
        acc = acc
            .mul(&num)
            .exact_div(&den)
            .expect("partial Gaussian binomial quotients are polynomials");
    }
    acc
}

/// `t^a - t^{-a}` at `t = q^{dhalf/2}`.
fn centered_factor(a: u32, dhalf: i64) -> QLaurent {
    let h = a as i64 * dhalf;
    &QLaurent::q_half_pow(h) - &QLaurent::q_half_pow(-h)
}

fn classical_binom(r: u32, p: u32) -> BigInt {
    let p = p.min(r - p);
    let mut acc = BigInt::one();
    for i in 1..=p {
        acc = acc * BigInt::from(r - p + i) / BigInt::from(i);
    }
    acc
}
