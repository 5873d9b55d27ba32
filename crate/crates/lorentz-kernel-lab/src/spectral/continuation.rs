//! Analytic continuation of the transforms in the coupling z: residues of
//! the fraction series at the contour-crossing poles, the discrete
//! supplementary weight they generate, and the decomposition weights.

use super::integrand::{assemble_one_photon, assemble_spherical, FractionSeries};
use super::series::{series_sum, SeriesEval};
use crate::error::{domain, Result};
use crate::ratmath::{crat, crat_to_c64, i_pow, rat, rat_from_f64, rat_to_f64, CRat, Rat};
use num_complex::Complex64;
use num_traits::{One, Zero};

/// Exact residue in rho of the series value at the contour-crossing pole
/// of the shift j = -1 fractions: rho0 = phase * i (1 - z). Only the
/// (n, k) = (0, 0) groups contribute. Bucket multipliers and the series
/// scale are included; the result is (gaussian rational, radicand).
pub fn residue_at_unit_pole(fs: &FractionSeries, phase: i8, z: &Rat) -> (CRat, Rat) {
    assert!(phase == 1 || phase == -1);
    // rho0 = phase * i(1-z)
    let rho0 = crat(Rat::zero(), Rat::from_integer(phase.into()) * (Rat::one() - z));
    let mut total = CRat::new(Rat::zero(), Rat::zero());
    for bucket in &fs.buckets {
        let mult = bucket.mult_num.eval(&rho0) / bucket.mult_den.eval(&rho0);
        let mut acc = CRat::new(Rat::zero(), Rat::zero());
        for term in &bucket.poly.terms {
            if term.j != -1 || term.s != phase {
                continue;
            }
            // p-th derivative of the coefficient at rho0, times i^{p+1} for
            // the e^{+} pole or (-i)^{p+1} for the e^{-} pole
            let mut deriv = term.coef.clone();
            for _ in 0..term.p {
                deriv = deriv.derivative();
            }
            let ipow = i_pow((term.p as i64 + 1) * phase as i64);
            let zpw = {
                let mut acc = Rat::one();
                for _ in 0..term.zpow {
                    acc *= z;
                }
                acc
            };
            acc += deriv.eval(&rho0) * ipow * CRat::new(zpw, Rat::zero());
        }
        total += acc * mult;
    }
    (total * fs.scale.clone(), fs.radicand.clone())
}

fn residue_c64(fs: &FractionSeries, phase: i8, z: &Rat) -> Complex64 {
    let (r, radicand) = residue_at_unit_pole(fs, phase, z);
    crat_to_c64(&r) * rat_to_f64(&radicand).sqrt()
}

/// The residue combination that the contour picks up when z crosses from
/// z > 1 into 0 < z < 1:
///
///   kappa = pi i res_{rho = -i(1-z)} [(rho^2/(2 pi^4)) K]
///         - pi i res_{rho = +i(1-z)} [(rho^2/(2 pi^4)) K]
///
/// for the transform K = front(z) * series. `front` multiplies the raw
/// series value into the displayed transform.
pub fn kappa_from_series(fs: &FractionSeries, z: f64, front: Complex64) -> Result<Complex64> {
    if !(0.0 < z && z < 1.0) {
        return Err(domain(format!(
            "the supplementary component exists only for 0 < z < 1; got z = {z}"
        )));
    }
    let zr = rat_from_f64(z);
    let rho0_sq = Complex64::new(-(1.0 - z) * (1.0 - z), 0.0);
    let pi = std::f64::consts::PI;
    let weight = Complex64::new(0.0, pi) * rho0_sq / (2.0 * pi.powi(4)) * front;
    // the e^{-} pole sits at rho = -i(1-z), the e^{+} pole at +i(1-z)
    let res_minus = residue_c64(fs, -1, &zr);
    let res_plus = residue_c64(fs, 1, &zr);
    Ok(weight * (res_minus - res_plus))
}

/// Front factor of the diagonal one-photon transform element
/// (4 pi e / (2l+1))^2 e^z pi^2 (the measure constant included).
pub fn one_photon_front(l: u32, z: f64, e2: f64) -> f64 {
    let pi = std::f64::consts::PI;
    (4.0 * pi / (2 * l + 1) as f64).powi(2) * e2 * z.exp() * pi * pi
}

/// Front factor of the spherical transform: 4 pi^3 e^z (the 1/rho lives in
/// the series bucket).
pub fn spherical_front(z: f64) -> f64 {
    4.0 * std::f64::consts::PI.powi(3) * z.exp()
}

/// Supplementary-component weight kappa_{alpha alpha} for the cyclic vector
/// with one creation operator of angular index (l, 0); units of e^2 from
/// `e2`. For the vacuum-cloud vector pass l = 0.
pub fn residue_kappa(l: u32, z: f64, e2: f64) -> Result<Complex64> {
    if l == 0 {
        let fs = assemble_spherical();
        kappa_from_series(&fs, z, Complex64::new(spherical_front(z), 0.0))
    } else {
        let fs = assemble_one_photon(l, l, 0)?;
        kappa_from_series(&fs, z, Complex64::new(one_photon_front(l, z, e2), 0.0))
    }
}

/// Trace of the transform matrix (its only nonzero eigenvalue) plus the
/// supplementary weight when 0 < z < 1, for the cyclic vectors with q = 0
/// (l = 0 here) or q = 1 with angular index (l, 0).
pub fn decomposition_weight(
    l: u32,
    l0: i32,
    rho: f64,
    z: f64,
    e2: f64,
    tol: f64,
) -> Result<(f64, Option<f64>)> {
    let (series, front): (FractionSeries, f64) = if l == 0 {
        if l0 != 0 {
            return Ok((0.0, if z < 1.0 { Some(0.0) } else { None }));
        }
        (assemble_spherical(), spherical_front(z))
    } else {
        if l0.unsigned_abs() > l {
            return Ok((0.0, if z < 1.0 { Some(0.0) } else { None }));
        }
        (assemble_one_photon(l, l, l0)?, one_photon_front(l, z, e2))
    };
    let eval = series_sum(&series, Complex64::new(rho, 0.0), Complex64::new(z, 0.0), tol)?;
    let trace = (eval.value * front).re;
    let supp = if 0.0 < z && z < 1.0 {
        if l0 == 0 {
            Some(residue_kappa(l, z, e2)?.re)
        } else {
            Some(0.0)
        }
    } else {
        None
    };
    Ok((trace, supp))
}

/// Evaluate the series after walking z from `z_start` to `z_end` along a
/// piecewise-linear complex path; the value at the end must not depend on
/// the path as long as no poles are crossed.
pub fn series_along_path(
    fs: &FractionSeries,
    rho: Complex64,
    path: &[Complex64],
    tol: f64,
) -> Result<SeriesEval> {
    let mut last = None;
    for &z in path {
        last = Some(series_sum(fs, rho, z, tol)?);
    }
    Ok(last.expect("path must be nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::integrand as asm;

    #[test]
    fn one_photon_kappa_closed_coefficient() {
        // 2 e^2 pi e^z (1-z)(2-z) on the diagonal for l = 1. The value is
        // pinned by reconstructing the kernel from the continued transform
        // plus this weight times the supplementary matrix element.
        for z in [0.25, 0.5, 0.75] {
            let got = residue_kappa(1, z, 1.0).unwrap();
            let expect = 2.0 * std::f64::consts::PI * z.exp() * (1.0 - z) * (2.0 - z);
            assert!(
                (got.re - expect).abs() < 1e-10 * expect.abs() && got.im.abs() < 1e-12,
                "z={z}: {got} vs {expect}"
            );
        }
    }

    #[test]
    fn kappa_vanishes_toward_unit_coupling() {
        let v = residue_kappa(1, 0.999, 1.0).unwrap();
        assert!(v.re.abs() < 0.02);
        assert!(residue_kappa(1, 1.5, 1.0).is_err());
    }

    #[test]
    fn spherical_kappa_positive() {
        for z in [0.25, 0.5, 0.75] {
            let v = residue_kappa(0, z, 1.0).unwrap();
            assert!(v.re > 0.0 && v.im.abs() < 1e-12 * v.re, "z={z}: {v}");
        }
    }

    #[test]
    fn residue_matches_extraction_rule() {
        // integrand sinh(l) sin(rho l): the shift -1 coefficient of the
        // e^{+} phase is -i/4, so the residue is i (-i/4) = 1/4, and the
        // bucket multiplier 1/rho at rho0 = i/2 contributes -2i.
        let fs = asm::assemble_spherical();
        let z = rat_from_f64(0.5);
        let (r, radicand) = residue_at_unit_pole(&fs, 1, &z);
        assert_eq!(radicand, Rat::one());
        assert_eq!(r, crat(Rat::zero(), crate::ratmath::ratio(-1, 2)));
    }

    #[test]
    fn decomposition_weights_positive_for_principal_part() {
        let (tr, supp) = decomposition_weight(0, 0, 1.0, 2.0, 1.0, 1e-9).unwrap();
        assert!(tr > 0.0);
        assert!(supp.is_none());
        let (tr, supp) = decomposition_weight(0, 0, 1.0, 0.5, 1.0, 1e-9).unwrap();
        assert!(tr > 0.0);
        assert!(supp.unwrap() > 0.0);
        let (tr, supp) = decomposition_weight(1, 0, 0.7, 0.5, 1.0, 1e-9).unwrap();
        assert!(tr.abs() > 0.0);
        assert!(supp.unwrap() > 0.0);
    }

    #[test]
    fn path_independence_of_the_continuation() {
        let fs = asm::assemble_spherical();
        let rho = Complex64::new(1.0, 0.0);
        // two different complex paths from z = 2 to z = 0.5
        let upper: Vec<Complex64> = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(1.5, 0.8),
            Complex64::new(0.8, 0.6),
            Complex64::new(0.5, 0.0),
        ];
        let lower: Vec<Complex64> = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(1.5, -0.8),
            Complex64::new(0.8, -0.6),
            Complex64::new(0.5, 0.0),
        ];
        let a = series_along_path(&fs, rho, &upper, 1e-10).unwrap();
        let b = series_along_path(&fs, rho, &lower, 1e-10).unwrap();
        assert!(
            (a.value - b.value).norm() < 1e-9,
            "path dependence: {} vs {}",
            a.value,
            b.value
        );
    }
}
