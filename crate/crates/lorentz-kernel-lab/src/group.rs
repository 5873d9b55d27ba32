//! Elements of SL(2,C), the six-angle coordinate decomposition
//! g = a1(theta1, phi1, theta_1)* a2(theta, phi)* boost(lambda) a2(theta, phi)
//! and the invariant measure weight in those coordinates.

use crate::error::{domain, Error, Result};
use crate::linalg::{Mat2, C64};

/// Coordinates (theta1, phi1, vartheta1, vartheta, phi, lambda) of the
/// decomposition above; lambda >= 0 is the rapidity of the boost factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coords {
    pub theta1: f64,
    pub phi1: f64,
    pub vartheta1: f64,
    pub vartheta: f64,
    pub phi: f64,
    pub lambda: f64,
}

/// An element of SL(2,C): the 2x2 matrix plus, once computed, its
/// coordinates in the six-angle chart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub matrix: Mat2,
    pub coords: Option<Coords>,
}

impl GroupElement {
    pub fn from_matrix(matrix: Mat2) -> Result<GroupElement> {
        let det = matrix.det();
        if (det - C64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(domain(format!(
                "matrix determinant {det} differs from 1 beyond 1e-12"
            )));
        }
        Ok(GroupElement { matrix, coords: None })
    }

    pub fn identity() -> GroupElement {
        GroupElement { matrix: Mat2::identity(), coords: None }
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement { matrix: self.matrix.mul(&rhs.matrix), coords: None }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { matrix: self.matrix.inv_unimodular(), coords: None }
    }

    pub fn is_su2(&self, tol: f64) -> bool {
        self.matrix.is_unitary(tol)
    }
}

/// Hyperbolic rotation in the 03 plane: diag(e^{lambda/2}, e^{-lambda/2}).
pub fn boost(lambda: f64) -> GroupElement {
    let h = 0.5 * lambda;
    GroupElement {
        matrix: Mat2::new(
            C64::new(h.exp(), 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new((-h).exp(), 0.0),
        ),
        coords: Some(Coords {
            theta1: 0.0,
            phi1: 0.0,
            vartheta1: 0.0,
            vartheta: 0.0,
            phi: 0.0,
            lambda: lambda.abs(),
        }),
    }
}

/// Spatial rotation along one of the planes 12, 13, 23.
pub fn rotation(plane: (u8, u8), angle: f64) -> Result<GroupElement> {
    let h = 0.5 * angle;
    let m = match plane {
        (1, 2) => Mat2::new(
            C64::new(h.cos(), h.sin()),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(h.cos(), -h.sin()),
        ),
        (1, 3) => Mat2::new(
            C64::new(h.cos(), 0.0),
            C64::new(0.0, h.sin()),
            C64::new(0.0, h.sin()),
            C64::new(h.cos(), 0.0),
        ),
        (2, 3) => Mat2::new(
            C64::new(h.cos(), 0.0),
            C64::new(h.sin(), 0.0),
            C64::new(-h.sin(), 0.0),
            C64::new(h.cos(), 0.0),
        ),
        _ => return Err(domain(format!("unknown rotation plane {plane:?}"))),
    };
    Ok(GroupElement { matrix: m, coords: None })
}

/// SU(2) element g12(theta) g13(phi) g12(psi) in Euler-like angles.
pub fn euler_su2(theta: f64, phi: f64, psi: f64) -> Mat2 {
    let a = rotation((1, 2), theta).unwrap().matrix;
    let b = rotation((1, 3), phi).unwrap().matrix;
    let c = rotation((1, 2), psi).unwrap().matrix;
    a.mul(&b).mul(&c)
}

/// The two-angle SU(2) factor a2(vartheta, phi) = g13(phi) g12(vartheta).
pub fn a2_matrix(vartheta: f64, phi: f64) -> Mat2 {
    rotation((1, 3), phi)
        .unwrap()
        .matrix
        .mul(&rotation((1, 2), vartheta).unwrap().matrix)
}

/// Invariant-measure density at the given coordinates, normalized so the
/// SU(2) factor integrates to one:
/// dg = da1 * pi^2 sinh^2(lambda) sin(phi) dlambda dvartheta dphi,
/// da1 = (1/(8 pi^2)) sin(phi1) dtheta1 dphi1 dvartheta1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureWeight {
    pub value: f64,
}

pub fn measure_weight(c: &Coords) -> MeasureWeight {
    let pi = std::f64::consts::PI;
    let su2_factor = c.phi1.sin() / (8.0 * pi * pi);
    MeasureWeight {
        value: pi * pi * c.lambda.sinh().powi(2) * c.phi.sin() * su2_factor,
    }
}

/// Decompose g into the six-angle coordinates. The boost factor is read
/// off the polar part of g; for lambda = 0 the residual rotation a2 is not
/// unique and is set to zero angles by convention.
pub fn decompose(g: &GroupElement) -> Result<Coords> {
    let m = &g.matrix;
    if (m.det() - C64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(domain("decompose requires unit determinant"));
    }
    let norm2: f64 = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| m.a[i][j].norm_sqr())
        .sum();
    if !norm2.is_finite() || norm2 > 1e24 {
        return Err(Error::Precision {
            context: "decompose of an ill-conditioned group element".into(),
            achieved: norm2,
        });
    }
    // h = g^dagger g = a2^* diag(e^lambda, e^-lambda) a2 is positive Hermitian.
    let h = m.dagger().mul(m);
    let tr = h.a[0][0].re + h.a[1][1].re;
    let lambda = (0.5 * tr).max(1.0).acosh();
    let (vartheta, phi) = if lambda < 1e-9 {
        (0.0, 0.0)
    } else {
        // Eigenvector of h for e^{lambda}; columns of a2^* are eigenvectors.
        let ev = lambda.exp();
        let (v1, v2) = eigenvector_2x2(&h, ev);
        // a2^* e1 = (e^{-i vt/2} cos(phi/2), -i e^{+i vt/2} sin(phi/2))
        let cos_half = v1.norm().clamp(0.0, 1.0);
        let phi = 2.0 * cos_half.acos();
        let vartheta = if v2.norm() < 1e-12 || v1.norm() < 1e-12 {
            0.0
        } else {
            let raw = std::f64::consts::FRAC_PI_2 - v1.arg() + v2.arg();
            raw.rem_euclid(2.0 * std::f64::consts::PI)
        };
        (vartheta, phi)
    };
    let a2 = a2_matrix(vartheta, phi);
    let d = boost(lambda).matrix;
    // a1^* = g a2^* D^{-1} a2  =>  a1 = (g a2^* D^{-1} a2)^dagger
    let a1_star = m
        .mul(&a2.dagger())
        .mul(&d.inv_unimodular())
        .mul(&a2);
    let a1 = a1_star.dagger();
    if !a1.is_unitary(1e-8) {
        return Err(Error::Precision {
            context: "decompose: residual factor failed unitarity".into(),
            achieved: a1.mul(&a1.dagger()).max_abs_diff(&Mat2::identity()),
        });
    }
    let (theta1, phi1, vartheta1) = euler_angles(&a1);
    Ok(Coords { theta1, phi1, vartheta1, vartheta, phi, lambda })
}

/// Normalized eigenvector of a 2x2 Hermitian matrix for eigenvalue ev.
fn eigenvector_2x2(h: &Mat2, ev: f64) -> (C64, C64) {
    let a = h.a[0][0] - C64::new(ev, 0.0);
    let b = h.a[0][1];
    let c = h.a[1][0];
    let d = h.a[1][1] - C64::new(ev, 0.0);
    // Rows of (h - ev) are orthogonal to the eigenvector; take the bigger row.
    let (r1, r2) = if a.norm() + b.norm() >= c.norm() + d.norm() {
        (a, b)
    } else {
        (c, d)
    };
    let (mut v1, mut v2) = (-r2, r1);
    if v1.norm() + v2.norm() < 1e-14 {
        (v1, v2) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    }
    let n = (v1.norm_sqr() + v2.norm_sqr()).sqrt();
    (v1 / n, v2 / n)
}

/// Euler angles of an SU(2) matrix in the g12 g13 g12 chart.
fn euler_angles(a: &Mat2) -> (f64, f64, f64) {
    // a = g12(t) g13(p) g12(s):
    //   a11 = cos(p/2) e^{i(t+s)/2},  a12 = i sin(p/2) e^{i(t-s)/2}
    let cos_half = a.a[0][0].norm().clamp(0.0, 1.0);
    let p = 2.0 * cos_half.acos();
    let sum = 2.0 * a.a[0][0].arg();
    let diff = if a.a[0][1].norm() > 1e-12 {
        2.0 * (a.a[0][1] * C64::new(0.0, -1.0)).arg()
    } else {
        0.0
    };
    let t = 0.5 * (sum + diff);
    let s = 0.5 * (sum - diff);
    (
        t.rem_euclid(4.0 * std::f64::consts::PI),
        p,
        s.rem_euclid(4.0 * std::f64::consts::PI),
    )
}

/// Rebuild the matrix from coordinates; inverse of `decompose` up to the
/// chart conventions.
pub fn from_coords(c: &Coords) -> GroupElement {
    let a1 = euler_su2(c.theta1, c.phi1, c.vartheta1);
    let a2 = a2_matrix(c.vartheta, c.phi);
    let m = a1
        .dagger()
        .mul(&a2.dagger())
        .mul(&boost(c.lambda).matrix)
        .mul(&a2);
    GroupElement { matrix: m, coords: Some(*c) }
}

/// Hyperbolic angle between g and h: the lambda coordinate of g^{-1} h.
pub fn relative_rapidity(g: &GroupElement, h: &GroupElement) -> Result<f64> {
    Ok(decompose(&g.inverse().mul(h))?.lambda)
}

/// Deterministic pseudo-random element with rapidity bounded by `max_lambda`.
pub fn random_element(state: &mut u64, max_lambda: f64) -> GroupElement {
    let a = crate::special::random_su2(state);
    let b = crate::special::random_su2(state);
    let mut next = || {
        *state ^= *state << 13;
        *state ^= *state >> 7;
        *state ^= *state << 17;
        (*state >> 11) as f64 / (1u64 << 53) as f64
    };
    let lam = max_lambda * next();
    GroupElement {
        matrix: a.mul(&boost(lam).matrix).mul(&b),
        coords: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boost_basics() {
        assert!(boost(0.0).matrix.max_abs_diff(&Mat2::identity()) < 1e-15);
        let ab = boost(0.7).mul(&boost(1.4));
        assert!(ab.matrix.max_abs_diff(&boost(2.1).matrix) < 1e-12);
        assert!((boost(3.0).matrix.det() - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rotation_basics() {
        for plane in [(1, 2), (1, 3), (2, 3)] {
            assert!(rotation(plane, 0.0).unwrap().matrix.max_abs_diff(&Mat2::identity()) < 1e-15);
            let r = rotation(plane, 1.234).unwrap();
            assert!(r.matrix.is_unitary(1e-12));
        }
        // spin-1/2 double cover: full turn is -identity
        let full = rotation((1, 2), 2.0 * std::f64::consts::PI).unwrap();
        let minus_id = Mat2::new(
            C64::new(-1.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(-1.0, 0.0),
        );
        assert!(full.matrix.max_abs_diff(&minus_id) < 1e-12);
        assert!(rotation((2, 1), 1.0).is_err());
    }

    #[test]
    fn decompose_identity_and_boost() {
        let c = decompose(&GroupElement::identity()).unwrap();
        assert!(c.lambda.abs() < 1e-12 && c.phi == 0.0 && c.vartheta == 0.0);
        let c = decompose(&boost(2.0)).unwrap();
        assert!((c.lambda - 2.0).abs() < 1e-12);
        assert!(c.phi.abs() < 1e-9);
    }

    #[test]
    fn decompose_roundtrip_random() {
        let mut st = 0xabcdefu64;
        let mut worst: f64 = 0.0;
        for _ in 0..100 {
            let g = random_element(&mut st, 3.0);
            let c = decompose(&g).unwrap();
            assert!(c.lambda >= 0.0);
            assert!((0.0..=std::f64::consts::PI + 1e-9).contains(&c.phi));
            let back = from_coords(&c);
            worst = worst.max(back.matrix.max_abs_diff(&g.matrix));
        }
        assert!(worst < 1e-9, "worst roundtrip deviation {worst}");
    }

    #[test]
    fn rapidity_properties() {
        let mut st = 0x1234u64;
        let g = random_element(&mut st, 2.0);
        assert!(relative_rapidity(&g, &g).unwrap() < 1e-9);
        let mu = 1.3;
        assert!(
            (relative_rapidity(&GroupElement::identity(), &boost(mu)).unwrap() - mu).abs() < 1e-12
        );
        // left invariance
        let h = random_element(&mut st, 2.0);
        let k = random_element(&mut st, 2.0);
        let plain = relative_rapidity(&g, &h).unwrap();
        let moved = relative_rapidity(&k.mul(&g), &k.mul(&h)).unwrap();
        assert!((plain - moved).abs() < 1e-9);
    }

    #[test]
    fn measure_weight_shape() {
        let c = Coords {
            theta1: 0.3,
            phi1: 1.0,
            vartheta1: 0.2,
            vartheta: 0.4,
            phi: 0.8,
            lambda: 1.5,
        };
        let pi = std::f64::consts::PI;
        let expect = pi * pi * 1.5f64.sinh().powi(2) * 0.8f64.sin() * 1.0f64.sin() / (8.0 * pi * pi);
        assert!((measure_weight(&c).value - expect).abs() < 1e-14);
    }
}
