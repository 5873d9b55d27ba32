//! Laurent coefficients of the continued transforms at the poles
//! rho = -i(m + z), their numerical contour oracle, and the large-order
//! asymptotic form used to prove nonvanishing.
//!
//! Conventions: the rational bucket multipliers (the 1/(rho Q(rho)) front)
//! are ignored here, matching the normalization in which the Laurent
//! coefficients are polynomials in z; the series scale factor is kept.

use super::integrand::FractionSeries;
use super::series::series_sum;
use crate::error::Result;
use crate::ratmath::{
    binom_int, crat, crat_ln_norm, i_pow, rat, rat_ln_abs, CRat, Rat,
};
use num_complex::Complex64;
use num_traits::{One, Zero};

/// Strip the rational multipliers off every bucket.
fn without_mults(fs: &FractionSeries) -> FractionSeries {
    let mut out = fs.clone();
    for b in &mut out.buckets {
        b.mult_num = super::poly::PolyC::one();
        b.mult_den = super::poly::PolyC::one();
    }
    out
}

/// Exact Laurent coefficient of order `s_ord` at rho = -i(m + z):
/// the coefficient of (rho - rho0)^{-s_ord}. Only e^{+i rho lambda}
/// fractions with 2k + 2n + j = m contribute. Returns (value, radicand);
/// the full coefficient is value * sqrt(radicand).
pub fn laurent_coefficient(fs: &FractionSeries, m: i64, s_ord: u32, z: &Rat) -> (CRat, Rat) {
    assert!(s_ord >= 1);
    let rho0 = crat(Rat::zero(), -(Rat::from_integer(m.into()) + z));
    let mut total = CRat::new(Rat::zero(), Rat::zero());
    for bucket in &fs.buckets {
        let q = bucket.poly.q;
        for term in &bucket.poly.terms {
            if term.s != 1 {
                continue;
            }
            let parity_gap = m - term.j;
            if parity_gap < 0 || parity_gap % 2 != 0 {
                continue;
            }
            // z^{zpow} once per term
            let mut zfac = Rat::one();
            for _ in 0..term.zpow {
                zfac *= z;
            }
            let mut deriv = term.coef.clone();
            let mut r_fact = Rat::one();
            let max_r = term.coef.degree().unwrap_or(0);
            for r in 0..=max_r {
                if r > 0 {
                    deriv = deriv.derivative();
                    r_fact *= rat(r as i64);
                }
                let n = s_ord as i64 + r as i64 - term.p as i64 - 1;
                if n < 0 {
                    continue;
                }
                let k = (m - term.j) / 2 - n;
                if k < 0 {
                    continue;
                }
                // expansion coefficient binom(k + n + q, n + q)
                let big_m = n + q + 1;
                let c_k = if big_m <= 0 {
                    if k == 0 && big_m == 0 {
                        Rat::one()
                    } else {
                        continue;
                    }
                } else {
                    Rat::from_integer(binom_int((k + big_m - 1) as u64, (big_m - 1) as u64))
                };
                // (n+1)...(n+p)
                let mut rising = Rat::one();
                for e in 1..=term.p as i64 {
                    rising *= rat(n + e);
                }
                // (-2z)^n
                let mut pw = Rat::one();
                for _ in 0..n {
                    pw *= rat(-2) * z;
                }
                let val = deriv.eval(&rho0)
                    * CRat::new(&zfac * &r_fact.recip() * rising * pw * c_k, Rat::zero())
                    * i_pow(n + term.p as i64 + 1);
                total += val;
            }
        }
    }
    (total * fs.scale.clone(), fs.radicand.clone())
}

/// ln |Laurent coefficient| including the radicand.
pub fn laurent_ln_abs(fs: &FractionSeries, m: i64, s_ord: u32, z: &Rat) -> f64 {
    let (v, radicand) = laurent_coefficient(fs, m, s_ord, z);
    crat_ln_norm(&v) + 0.5 * rat_ln_abs(&radicand)
}

/// Numerical contour oracle: (1/2 pi i) oint f(rho) (rho - rho0)^{s-1} drho
/// on a circle of radius `radius` around rho0 = -i(m+z) by the trapezoid
/// rule, with f the series value in the same mult-free normalization.
/// Returns the value and an accuracy estimate from the per-point bounds.
pub fn laurent_contour_oracle(
    fs: &FractionSeries,
    m: i64,
    s_ord: u32,
    z: f64,
    radius: f64,
    points: usize,
) -> Result<(Complex64, f64)> {
    let bare = without_mults(fs);
    let rho0 = Complex64::new(0.0, -(m as f64 + z));
    // gauge the magnitude on the circle first so the per-point tolerance is
    // relative to the pole-dominated values; double-double rounding floors
    // the reachable accuracy, so fall back to the achieved bound
    let eval = |pt: Complex64, tol: f64| -> Result<(Complex64, f64)> {
        match series_sum(&bare, pt, Complex64::new(z, 0.0), tol) {
            Ok(s) => Ok((s.value, s.bound)),
            Err(crate::error::Error::Precision { achieved, .. }) => {
                let s = series_sum(&bare, pt, Complex64::new(z, 0.0), achieved * 4.0)?;
                Ok((s.value, s.bound))
            }
            Err(e) => Err(e),
        }
    };
    let (first, _) = eval(rho0 + Complex64::new(radius, 0.0), 1e-4)?;
    let tol = (1e-9 * first.norm()).max(1e-13);
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for kp in 0..points {
        let theta = 2.0 * std::f64::consts::PI * kp as f64 / points as f64;
        let offset = Complex64::from_polar(radius, theta);
        let (val, bound) = eval(rho0 + offset, tol)?;
        acc += val * offset.powu(s_ord);
        err += bound * radius.powi(s_ord as i32);
    }
    Ok((acc / points as f64, err / points as f64))
}

/// The large-order asymptotic form of the Laurent coefficient at
/// m = s^2: prefactor (es/2)^s (s/2)^{q-1-p} (-2iz)^{s-1-p} i^{p+1} over
/// e sqrt(2 pi s), times the coefficient sums with the j-moments resummed
/// as e^{-j/s}. Returns ln of the modulus.
pub fn laurent_asymptotic_ln_abs(fs: &FractionSeries, s_ord: u32, z: f64) -> f64 {
    let s = s_ord as f64;
    let sq = s_ord as i64 * s_ord as i64;
    let minus_2iz = Complex64::new(0.0, -2.0 * z);
    let mut combined = Complex64::new(0.0, 0.0);
    // shared magnitude pulled out: |(-2iz)|^{s-1} (es/2)^s / (e sqrt(2 pi s))
    let ln_shared = (s - 1.0) * (2.0 * z).abs().ln()
        + s * (std::f64::consts::E * s / 2.0).ln()
        - 1.0
        - 0.5 * (2.0 * std::f64::consts::PI * s).ln()
        + (-2.0 / (3.0 * s) - 2.0 / (3.0 * s * s) - 4.0 / (5.0 * s.powi(3))
            - 16.0 / (15.0 * s.powi(4)));
    let phase_2iz = minus_2iz / minus_2iz.norm();
    for bucket in &fs.buckets {
        let q = bucket.poly.q as f64;
        for p in 0u8..=2 {
            // collect a^+_{p, j, l} with z-powers folded in
            let mut sum = Complex64::new(0.0, 0.0);
            for term in &bucket.poly.terms {
                if term.s != 1 || term.p != p {
                    continue;
                }
                let zfac = z.powi(term.zpow as i32);
                let damp = (-(term.j as f64) / s).exp();
                for (ell, coeff) in term.coef.c.iter().enumerate() {
                    let a = crate::ratmath::crat_to_c64(coeff) * zfac;
                    if a.norm() == 0.0 {
                        continue;
                    }
                    for r in 0..=ell {
                        let g = match p {
                            0 => 1.0,
                            1 => r as f64 + s - 1.0,
                            _ => (r as f64 + s - 1.0) * (r as f64 + s - 2.0),
                        };
                        let b = binom_f64(ell as i64, r as i64);
                        let main = Complex64::new(0.0, -(sq as f64 + z)).powu((ell - r) as u32);
                        let osc = Complex64::new(0.0, -z * s).powu(r as u32);
                        sum += a * b * main * osc * g * damp;
                    }
                }
            }
            if sum.norm() == 0.0 {
                continue;
            }
            // relative prefactor i^{p+1} (-2iz)^{-p} (s/2)^{q-1-p}
            let rel = Complex64::new(0.0, 1.0).powu(p as u32 + 1)
                * minus_2iz.powi(-(p as i32))
                * (s / 2.0).powf(q - 1.0 - p as f64);
            combined += rel * sum;
        }
    }
    // the shared oscillating phase phase_2iz^{s-1} has unit modulus
    let _ = phase_2iz;
    ln_shared + combined.norm().ln()
}

fn binom_f64(n: i64, k: i64) -> f64 {
    let k = k.min(n - k);
    if k < 0 {
        return 0.0;
    }
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}
