//! Clebsch-Gordan coefficients in the Condon-Shortley convention, exact
//! under a single square root.

use crate::ratmath::{factorial, Rat, SqrtRat};
use num_bigint::BigInt;
use num_traits::Zero;

/// Exact Clebsch-Gordan coefficient C^{l,m}_{l1,m1; l2,m2} for integer
/// angular momenta: the value is (rational sum) * sqrt(rational prefactor).
/// Returns zero outside the selection rules rather than erroring.
pub fn clebsch_gordan_exact(l1: u32, m1: i32, l2: u32, m2: i32, l: u32, m: i32) -> SqrtRat {
    if m1.unsigned_abs() > l1 || m2.unsigned_abs() > l2 || m.unsigned_abs() > l {
        return SqrtRat::rational(Rat::zero());
    }
    if m1 + m2 != m || l + l1 < l2 || l + l2 < l1 || l1 + l2 < l {
        return SqrtRat::rational(Rat::zero());
    }
    let f = |n: i64| -> Rat {
        debug_assert!(n >= 0);
        Rat::from_integer(factorial(n as u64))
    };
    let (l1, l2, l, m1, m2, m) = (l1 as i64, l2 as i64, l as i64, m1 as i64, m2 as i64, m as i64);
    let prefactor = f(l1 + l2 - l) * f(l1 - l2 + l) * f(l2 + l - l1)
        / f(l1 + l2 + l + 1)
        * Rat::from_integer(BigInt::from(2 * l + 1))
        * f(l + m)
        * f(l - m)
        * f(l1 - m1)
        * f(l1 + m1)
        * f(l2 - m2)
        * f(l2 + m2);
    let k_lo = 0.max(l2 - l - m1).max(l1 + m2 - l);
    let k_hi = (l1 + l2 - l).min(l1 - m1).min(l2 + m2);
    let mut sum = Rat::zero();
    for k in k_lo..=k_hi {
        let den = f(k) * f(l1 + l2 - l - k) * f(l1 - m1 - k) * f(l2 + m2 - k)
            * f(l - l2 + m1 + k)
            * f(l - l1 - m2 + k);
        let term = Rat::new(BigInt::from(if k % 2 == 0 { 1 } else { -1 }), BigInt::from(1)) / den;
        sum += term;
    }
    if sum.is_zero() {
        return SqrtRat::rational(Rat::zero());
    }
    SqrtRat::sqrt_of(prefactor).scale(&sum)
}

/// Floating-point Clebsch-Gordan coefficient.
pub fn clebsch_gordan(l1: u32, m1: i32, l2: u32, m2: i32, l: u32, m: i32) -> f64 {
    clebsch_gordan_exact(l1, m1, l2, m2, l, m).to_f64()
}
