//! Exact rational scalars shared by the special-function tables and the
//! symbolic integrand algebra. Coefficient assembly is exact; floats only
//! appear at final evaluation.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;
/// Gaussian rational: complex number with exact rational parts.
pub type CRat = Complex<Rat>;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn crat(re: Rat, im: Rat) -> CRat {
    Complex::new(re, im)
}

pub fn cint(n: i64) -> CRat {
    crat(rat(n), Rat::zero())
}

/// i^k for any integer k.
pub fn i_pow(k: i64) -> CRat {
    match k.rem_euclid(4) {
        0 => crat(rat(1), rat(0)),
        1 => crat(rat(0), rat(1)),
        2 => crat(rat(-1), rat(0)),
        _ => crat(rat(0), rat(-1)),
    }
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

pub fn binom_int(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Generalized binomial coefficient with rational upper argument:
/// w(w-1)...(w-k+1)/k!.
pub fn binom_rat(w: &Rat, k: u64) -> Rat {
    let mut acc = Rat::one();
    for i in 0..k {
        acc *= w - rat(i as i64);
    }
    acc / Rat::from_integer(factorial(k))
}

/// Exact conversion of an f64 (every finite f64 is a dyadic rational).
pub fn rat_from_f64(x: f64) -> Rat {
    assert!(x.is_finite(), "cannot rationalize a non-finite float");
    num_traits::FromPrimitive::from_f64(x).expect("finite f64 always converts")
}

pub fn crat_from_f64(re: f64, im: f64) -> CRat {
    crat(rat_from_f64(re), rat_from_f64(im))
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    // Direct conversion overflows for very large numerator/denominator;
    // fall back to a quotient of scaled parts.
    x.to_f64().unwrap_or_else(|| {
        let digits_n = x.numer().to_string().len() as i32;
        let digits_d = x.denom().to_string().len() as i32;
        let shift = (digits_n.max(digits_d) - 250).max(0);
        let scale = BigInt::from(10u32).pow(shift as u32);
        let n = (x.numer() / &scale).to_f64().unwrap_or(f64::NAN);
        let d = (x.denom() / &scale).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn crat_to_c64(z: &CRat) -> num_complex::Complex64 {
    num_complex::Complex64::new(rat_to_f64(&z.re), rat_to_f64(&z.im))
}

/// Natural log of |x| for rationals far outside the f64 range.
pub fn rat_ln_abs(x: &Rat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_abs_bigint(x.numer()) - ln_abs_bigint(x.denom())
}

fn ln_abs_bigint(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 900 {
        return n.abs().to_f64().unwrap().ln();
    }
    let shift = bits - 512;
    let reduced = n.abs() >> shift;
    reduced.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Log-magnitude of a Gaussian rational.
pub fn crat_ln_norm(z: &CRat) -> f64 {
    let a = rat_ln_abs(&z.re);
    let b = rat_ln_abs(&z.im);
    if a == f64::NEG_INFINITY && b == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let m = a.max(b);
    // ln sqrt(e^2a + e^2b)
    m + 0.5 * ((2.0 * (a - m)).exp() + (2.0 * (b - m)).exp()).ln()
}

pub fn cpow(z: &CRat, n: u32) -> CRat {
    let mut acc = cint(1);
    let mut base = z.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    acc
}

/// A positive rational kept under a square root: value = rational * sqrt(radicand).
/// Products stay exact; perfect-square content migrates out of the root.
#[derive(Debug, Clone, PartialEq)]
pub struct SqrtRat {
    pub rational: Rat,
    pub radicand: Rat,
}

impl SqrtRat {
    pub fn one() -> SqrtRat {
        SqrtRat { rational: Rat::one(), radicand: Rat::one() }
    }

    pub fn rational(q: Rat) -> SqrtRat {
        SqrtRat { rational: q, radicand: Rat::one() }
    }

    pub fn sqrt_of(r: Rat) -> SqrtRat {
        assert!(!r.is_negative(), "radicand must be non-negative");
        let mut s = SqrtRat { rational: Rat::one(), radicand: r };
        s.normalize();
        s
    }

    pub fn mul(&self, other: &SqrtRat) -> SqrtRat {
        let mut s = SqrtRat {
            rational: &self.rational * &other.rational,
            radicand: &self.radicand * &other.radicand,
        };
        s.normalize();
        s
    }

    pub fn scale(&self, q: &Rat) -> SqrtRat {
        SqrtRat { rational: &self.rational * q, radicand: self.radicand.clone() }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.rational) * rat_to_f64(&self.radicand).sqrt()
    }

    /// True when the root has collapsed to a rational.
    pub fn is_rational(&self) -> bool {
        self.radicand.is_one()
    }

    fn normalize(&mut self) {
        if self.radicand.is_zero() {
            self.rational = Rat::zero();
            self.radicand = Rat::one();
            return;
        }
        let num = extract_square(self.radicand.numer().clone());
        let den = extract_square(self.radicand.denom().clone());
        self.radicand = Rat::new(num.1.clone(), den.1.clone());
        self.rational *= Rat::new(num.0, den.0);
    }
}

/// Split n = s^2 * f with f square-free over small primes; returns (s, f).
fn extract_square(mut n: BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_negative());
    let mut s = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(100_000u64);
    while &p * &p <= n && p <= limit {
        let p2 = &p * &p;
        while (&n % &p2).is_zero() {
            n /= &p2;
            s *= &p;
        }
        p += 1;
    }
    (s, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomial_half_integer() {
        // (1/2 choose 2) = -1/8, (3/2 choose 2) = 3/8
        assert_eq!(binom_rat(&ratio(1, 2), 2), ratio(-1, 8));
        assert_eq!(binom_rat(&ratio(3, 2), 2), ratio(3, 8));
    }

    #[test]
    fn sqrt_rat_normalizes_squares() {
        let s = SqrtRat::sqrt_of(ratio(18, 25));
        assert_eq!(s.rational, ratio(3, 5));
        assert_eq!(s.radicand, rat(2));
        let t = s.mul(&SqrtRat::sqrt_of(rat(2)));
        assert!(t.is_rational());
        assert_eq!(t.rational, ratio(6, 5));
    }

    #[test]
    fn big_log_magnitude() {
        let x = Rat::from_integer(BigInt::from(10u32).pow(2000));
        assert!((rat_ln_abs(&x) - 2000.0 * 10f64.ln()).abs() < 1e-6);
    }

    #[test]
    fn f64_rationalization_is_exact() {
        assert_eq!(rat_from_f64(0.25), ratio(1, 4));
        assert_eq!(rat_from_f64(0.1), Rat::new(BigInt::from(3602879701896397u64), BigInt::from(2u64).pow(55)));
    }
}
