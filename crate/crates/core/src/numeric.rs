//! Floating-point helpers for exact big-integer quantities.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// Natural logarithm of a big integer, `-inf` for zero.
///
/// Values that fit a finite `f64` are converted directly; larger ones keep the
/// leading 64 bits and add the discarded bit count times `ln 2`.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.to_f64().unwrap_or(f64::INFINITY));
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    libm::log(top) + (shift as f64) * core::f64::consts::LN_2
}

/// `x^(1/n)` evaluated in log space.
pub fn nth_root(x: &BigUint, n: usize) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    libm::exp(ln_biguint(x) / n as f64)
}

/// `(num/den)^(1/n)` in log space.
pub fn ratio_nth_root(num: &BigUint, den: &BigUint, n: usize) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    libm::exp((ln_biguint(num) - ln_biguint(den)) / n as f64)
}

/// `num/den` as the nearest-ish `f64` (within a couple of ulps), for
/// operands of any size.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    let trim = |x: &BigUint| {
        let shift = x.bits().saturating_sub(1000);
        ((x >> shift).to_f64().unwrap_or(f64::INFINITY), shift as i64)
    };
    let (n, a) = trim(num);
    let (d, b) = trim(den);
    let e = (a - b).clamp(i32::MIN as i64, i32::MAX as i64) as i32;
    libm::ldexp(n / d, e)
}
