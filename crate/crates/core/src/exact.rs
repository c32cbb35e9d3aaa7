//! Exact comparisons of products `3^e * x^p` with a `u128` fast path.

use core::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

fn small(e: u64, x: &BigUint, p: u32) -> Option<u128> {
    let x = x.to_u64()? as u128;
    let three = 3u128.checked_pow(u32::try_from(e).ok()?)?;
    three.checked_mul(x.checked_pow(p)?)
}

fn big(e: u64, x: &BigUint, p: u32) -> BigUint {
    let e = u32::try_from(e).expect("exponent fits u32");
    BigUint::from(3u32).pow(e) * x.pow(p)
}

/// Compares `3^e1 * x1^p1` with `3^e2 * x2^p2`.
pub(crate) fn cmp_scaled(e1: u64, x1: &BigUint, p1: u32, e2: u64, x2: &BigUint, p2: u32) -> Ordering {
    let m = e1.min(e2);
    let (e1, e2) = (e1 - m, e2 - m);
    if let (Some(a), Some(b)) = (small(e1, x1, p1), small(e2, x2, p2)) {
        return a.cmp(&b);
    }
    big(e1, x1, p1).cmp(&big(e2, x2, p2))
}

/// Natural log of a big integer, accurate to double precision.
pub(crate) fn ln_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log(x.to_f64().expect("finite below 2^1000"));
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().expect("64-bit value");
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

/// `log_3 x` for a big integer.
pub(crate) fn log3_big(x: &BigUint) -> f64 {
    ln_big(x) / libm::log(3.0)
}

/// Smallest `t` with `3^t >= x`, for `x >= 1`.
pub(crate) fn ceil_log3(x: &BigUint) -> u32 {
    let mut t = 0u32;
    let mut p = BigUint::from(1u32);
    while &p < x {
        p *= 3u32;
        t += 1;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_and_big_paths_agree() {
        let a = BigUint::from(16u32);
        let b = BigUint::from(3u32);
        assert_eq!(cmp_scaled(16, &BigUint::from(1u32), 1, 1, &a, 6), Ordering::Less);
        assert_eq!(cmp_scaled(3, &b, 0, 0, &b, 3), Ordering::Equal);
        // Forces the BigUint path.
        assert_eq!(cmp_scaled(200, &a, 3, 190, &a, 3), Ordering::Greater);
        assert_eq!(cmp_scaled(0, &a, 40, 0, &a, 40), Ordering::Equal);
    }

    #[test]
    fn logs() {
        assert!((log3_big(&BigUint::from(81u32)) - 4.0).abs() < 1e-12);
        let huge = BigUint::from(3u32).pow(2000);
        assert!((log3_big(&huge) - 2000.0).abs() < 1e-9);
        assert_eq!(ceil_log3(&BigUint::from(1u32)), 0);
        assert_eq!(ceil_log3(&BigUint::from(27u32)), 3);
        assert_eq!(ceil_log3(&BigUint::from(28u32)), 4);
    }
}
