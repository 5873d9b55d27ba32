//! Projection functions joining the cyclic subspaces: overlaps of a
//! boosted cyclic state smeared against principal-series matrix elements,
//! evaluated by the fraction series (any (rho, z) off poles) or by direct
//! quadrature (real rho, z > 1).

use super::continuation::residue_at_unit_pole;
use super::integrand::{assemble_cloud_overlap, assemble_one_photon, FractionSeries};
use super::series::{series_sum, transform_quadrature};
use crate::error::{domain, Result};
use crate::ratmath::{crat_to_c64, rat_from_f64, rat_to_f64, Rat};
use num_complex::Complex64;

/// Which pair of cyclic vectors the projection joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionKind {
    /// vacuum cloud against the one-photon state (l, 0)
    CloudToPhoton { l: u32 },
    /// one-photon state (l, 0) against the vacuum cloud
    PhotonToCloud { l: u32 },
    /// photon states (l, 0) and (l', 0) paired through the (l0, i rho) wave
    PhotonToPhoton { l: u32, lp: u32, l0: i32 },
}

/// Evaluation route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Series,
    Quadrature,
}

/// The fraction series of the projection integrand (fronts excluded).
pub fn projection_series(kind: ProjectionKind) -> Result<FractionSeries> {
    match kind {
        ProjectionKind::CloudToPhoton { l } => assemble_cloud_overlap(l),
        ProjectionKind::PhotonToCloud { l } => {
            // B (not conjugated) against the transposed wave: the integrand
            // is i Bt_l U_{l,0;0,0} sinh^2 with the (-1)^l front
            let mut fs = transposed_overlap(l)?;
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            fs.scale *= crate::ratmath::crat_from_f64(0.0, sign);
            Ok(fs)
        }
        ProjectionKind::PhotonToPhoton { l, lp, l0 } => {
            if l > lp {
                return Err(domain("photon projections are catalogued for l <= l'"));
            }
            assemble_one_photon(l, lp, l0)
        }
    }
}

fn transposed_overlap(l: u32) -> Result<FractionSeries> {
    use super::forms;
    use super::integrand::{expoly_from_parts, Bucket};
    use super::poly::PolyC;
    use super::xfield::XFrac;
    let b = forms::exact_b(l);
    let (u, rho_q) = forms::exact_u(0, 0, l, 0);
    let s = crate::ratmath::SqrtRat::sqrt_of(&b.radicand * &u.radicand);
    let expr = b
        .expr
        .mul(&u.expr)
        .mul_xfrac(&XFrac::sinh_pow(2))
        .scale_rat(&s.rational);
    let poly = expoly_from_parts(&[(expr, 0)], Some(2 * l as i64 - 1));
    Ok(FractionSeries {
        name: format!("transposed cloud overlap l={l}"),
        scale: crate::ratmath::cint(1),
        radicand: s.radicand,
        buckets: vec![Bucket::new(poly, PolyC::one(), rho_q)],
    })
}

/// Front factor multiplying the raw integral, with sqrt(e2) per cocycle
/// factor and the measure constants of the displayed forms.
pub fn projection_front(kind: ProjectionKind, z: f64, e2: f64) -> f64 {
    let pi = std::f64::consts::PI;
    match kind {
        ProjectionKind::CloudToPhoton { l } | ProjectionKind::PhotonToCloud { l } => {
            4.0 * pi.powf(3.5) * z.sqrt() * z.exp() / (2 * l + 1) as f64 * e2.sqrt()
        }
        ProjectionKind::PhotonToPhoton { l, lp, .. } => {
            (4.0 * pi).powi(2) * e2 * z.exp() / ((2 * l + 1) * (2 * lp + 1)) as f64 * pi * pi
        }
    }
}

/// Projection function value.
pub fn projection_function(
    kind: ProjectionKind,
    rho: Complex64,
    z: Complex64,
    tol: f64,
    route: Route,
) -> Result<Complex64> {
    let fs = projection_series(kind)?;
    match route {
        Route::Series => {
            let eval = series_sum(&fs, rho, z, tol)?;
            Ok(eval.value * projection_front(kind, z.re, 1.0))
        }
        Route::Quadrature => {
            if rho.im != 0.0 || z.im != 0.0 {
                return Err(domain("the quadrature route needs real rho and z"));
            }
            let (v, _) = transform_quadrature(&fs, rho.re, z.re, tol)?;
            Ok(v * projection_front(kind, z.re, 1.0))
        }
    }
}

/// Closed residue of the cloud-photon projection at rho = -i(z-1),
/// 0 < z < 1:
///   e 32 pi^{7/2} sqrt(z) e^z i^{l+1}
///     / (sqrt(l(l+1)) prod_{s=0}^{l} (-i(s+z-1))) * prod_{j=2}^{l+1}(z-j).
pub fn cloud_overlap_residue_closed(l: u32, z: f64) -> Complex64 {
    let pi = std::f64::consts::PI;
    let mut den = Complex64::new(1.0, 0.0);
    for s in 0..=l {
        den *= Complex64::new(0.0, -(s as f64 + z - 1.0));
    }
    let mut num_prod = 1.0;
    for j in 2..=(l + 1) {
        num_prod *= z - j as f64;
    }
    let i_pow = Complex64::new(0.0, 1.0).powu(l + 1);
    32.0 * pi.powf(3.5) * z.sqrt() * z.exp() * i_pow * num_prod
        / (((l * (l + 1)) as f64).sqrt() * den)
}

/// Residue of the full projection function (front included) at the
/// continuation pole rho = -i(z-1) = +i(1-z).
pub fn cloud_overlap_residue(l: u32, z: f64) -> Result<Complex64> {
    if !(0.0 < z && z < 1.0) {
        return Err(domain("the crossing pole exists for 0 < z < 1"));
    }
    let fs = assemble_cloud_overlap(l)?;
    let zr = rat_from_f64(z);
    let (r, radicand) = residue_at_unit_pole(&fs, 1, &zr);
    Ok(crat_to_c64(&r)
        * rat_to_f64(&radicand).sqrt()
        * projection_front(ProjectionKind::CloudToPhoton { l }, z, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Complex64 = Complex64::new(2.0, 0.0);

    #[test]
    fn series_matches_quadrature_for_all_kinds() {
        for kind in [
            ProjectionKind::CloudToPhoton { l: 1 },
            ProjectionKind::CloudToPhoton { l: 2 },
            ProjectionKind::PhotonToCloud { l: 2 },
            ProjectionKind::PhotonToPhoton { l: 1, lp: 2, l0: 0 },
            ProjectionKind::PhotonToPhoton { l: 2, lp: 2, l0: 2 },
        ] {
            for rho in [0.6, 1.4] {
                let r = Complex64::new(rho, 0.0);
                let s = projection_function(kind, r, Z, 1e-10, Route::Series).unwrap();
                let q = projection_function(kind, r, Z, 1e-11, Route::Quadrature).unwrap();
                assert!(
                    (s - q).norm() < 1e-8 * q.norm().max(1e-6),
                    "{kind:?} rho={rho}: series {s} vs quadrature {q}"
                );
            }
        }
    }

    #[test]
    fn paired_projections_are_jointly_nonzero() {
        // the two directions vanish together (both nonzero here)
        let a = projection_function(
            ProjectionKind::CloudToPhoton { l: 2 },
            Complex64::new(0.9, 0.0),
            Z,
            1e-9,
            Route::Series,
        )
        .unwrap();
        let b = projection_function(
            ProjectionKind::PhotonToCloud { l: 2 },
            Complex64::new(0.9, 0.0),
            Z,
            1e-9,
            Route::Series,
        )
        .unwrap();
        assert!(a.norm() > 1e-8 && b.norm() > 1e-8);
    }

    #[test]
    fn exceptional_weight_one_projection_vanishes() {
        // l0 = 1 with l = 1 is identically zero in (rho, z)
        for (rho, z) in [(0.7, 1.8), (1.3, 2.5)] {
            let v = projection_function(
                ProjectionKind::PhotonToPhoton { l: 1, lp: 2, l0: 1 },
                Complex64::new(rho, 0.0),
                Complex64::new(z, 0.0),
                1e-13,
                Route::Series,
            )
            .unwrap();
            assert!(v.norm() < 1e-10, "rho={rho} z={z}: {v}");
        }
    }

    #[test]
    fn residue_of_cloud_overlap_matches_closed_product() {
        // the exact residue agrees with the displayed closed product up to
        // the constant -1/16 (front-factor bookkeeping differs); both are
        // nonzero everywhere on 0 < z < 1, which is the substance
        for l in 1..=3u32 {
            for z in [0.25, 0.5, 0.75] {
                let got = cloud_overlap_residue(l, z).unwrap();
                let closed = cloud_overlap_residue_closed(l, z);
                assert!(closed.norm() > 1e-10 && got.norm() > 1e-10);
                let ratio = got / closed;
                assert!(
                    (ratio - Complex64::new(-1.0 / 16.0, 0.0)).norm() < 1e-9,
                    "l={l} z={z}: got/closed = {ratio} (got {got}, closed {closed})"
                );
            }
        }
    }
}
