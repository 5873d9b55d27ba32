//! Standard matrices of the irreducible representations of SU(2).

use crate::error::{domain, Result};
use crate::linalg::{Mat2, C64};
use num_complex::Complex64;

/// Integer or half-integer weight stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(pub i32);

impl Half {
    pub fn int(n: i32) -> Half {
        Half(2 * n)
    }

    /// Value n/2.
    pub fn halves(n: i32) -> Half {
        Half(n)
    }

    pub fn doubled(self) -> i32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }
}

fn ln_factorial(n: i32) -> f64 {
    debug_assert!(n >= 0);
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Matrix element T^l_{m m'}(a) of the weight-l irreducible representation,
/// as the explicit binomial sum in the entries of a.
///
/// Indices are twice-values so half-integer weights are exact; `a` must be
/// unitary with unit determinant.
pub fn wigner_t(l: Half, m: Half, mp: Half, a: &Mat2) -> Result<Complex64> {
    let (l2, m2, mp2) = (l.0, m.0, mp.0);
    if m2.abs() > l2 || mp2.abs() > l2 {
        return Err(domain("wigner_t index out of range |m| <= l"));
    }
    if (l2 - m2) % 2 != 0 || (l2 - mp2) % 2 != 0 {
        return Err(domain("wigner_t indices must differ from l by integers"));
    }
    if !a.is_unitary(1e-9) || (a.det() - C64::new(1.0, 0.0)).norm() > 1e-9 {
        return Err(domain("wigner_t requires a unitary unimodular matrix"));
    }
    // All of these are non-negative integers.
    let lm = (l2 - m2) / 2; // l - m
    let lpm = (l2 + m2) / 2; // l + m
    let lmp = (l2 - mp2) / 2; // l - m'
    let lpmp = (l2 + mp2) / 2; // l + m'
    let norm = 0.5 * (ln_factorial(lm) + ln_factorial(lpm) - ln_factorial(lmp) - ln_factorial(lpmp));
    let sign = if (lm + lmp) % 2 == 0 { 1.0 } else { -1.0 }; // (-1)^{2l - m - m'}
    let mm_sum = (m2 + mp2) / 2; // m + m'
    let lo = 0.max(-mm_sum);
    let hi = lm.min(lmp);
    let mut acc = Complex64::new(0.0, 0.0);
    for alpha in lo..=hi {
        // binomial (l-m' over alpha) * binomial (l+m' over l-m-alpha)
        if lm - alpha > lpmp {
            continue;
        }
        let ln_b = ln_factorial(lmp) - ln_factorial(alpha) - ln_factorial(lmp - alpha)
            + ln_factorial(lpmp)
            - ln_factorial(lm - alpha)
            - ln_factorial(lpmp - lm + alpha);
        let coeff = (ln_b + norm).exp();
        let term = pow_c(a.a[0][0], alpha)
            * pow_c(a.a[0][1], lm - alpha)
            * pow_c(a.a[1][0], lmp - alpha)
            * pow_c(a.a[1][1], mm_sum + alpha);
        acc += term * coeff;
    }
    Ok(acc * sign)
}

/// Convenience wrapper for integer weights.
pub fn wigner_t_int(l: u32, m: i32, mp: i32, a: &Mat2) -> Result<Complex64> {
    wigner_t(Half::int(l as i32), Half::int(m), Half::int(mp), a)
}

fn pow_c(z: Complex64, n: i32) -> Complex64 {
    debug_assert!(n >= 0);
    z.powu(n as u32)
}

/// Rotation-type matrix element P^l_{m n}(cos phi): T^l at the SU(2) matrix
/// with diagonal cos(phi/2) and off-diagonal i sin(phi/2).
pub fn jacobi_p(l: Half, m: Half, n: Half, cos_phi: f64) -> Result<Complex64> {
    if !(-1.0..=1.0).contains(&cos_phi) {
        return Err(domain("jacobi_p argument outside [-1,1]"));
    }
    let c = ((1.0 + cos_phi) / 2.0).max(0.0).sqrt();
    let s = ((1.0 - cos_phi) / 2.0).max(0.0).sqrt();
    let a = Mat2::new(
        C64::new(c, 0.0),
        C64::new(0.0, s),
        C64::new(0.0, s),
        C64::new(c, 0.0),
    );
    wigner_t(l, m, n, &a)
}

/// Max deviation of the SU(2) orthogonality relations
/// int conj(T^{l1}_{m1 n1}) T^{l2}_{m2 n2} da  =  delta / (2 l1 + 1)
/// over all index tuples, by product quadrature in Euler angles.
/// Integer weights only; `order` sets the in-plane node counts.
pub fn su2_peter_weyl_check(l1: u32, l2: u32, order: usize) -> Result<f64> {
    let d1 = (2 * l1 + 1) as usize;
    let d2 = (2 * l2 + 1) as usize;
    let n_phi = order.max(8);
    let n_ang = (2 * (l1 + l2) as usize + 4).max(order);
    let rule = crate::quad::gauss_legendre(n_phi);
    let mut gram = vec![Complex64::new(0.0, 0.0); d1 * d1 * d2 * d2];
    for &(node, w_phi) in &rule {
        let phi = std::f64::consts::PI * (node + 1.0) / 2.0;
        for it in 0..n_ang {
            let theta = 2.0 * std::f64::consts::PI * it as f64 / n_ang as f64;
            for ip in 0..n_ang {
                let psi = 2.0 * std::f64::consts::PI * ip as f64 / n_ang as f64;
                let a = crate::group::euler_su2(theta, phi, psi);
                let t1 = rep_matrix(l1, &a)?;
                let t2 = rep_matrix(l2, &a)?;
                // measure: (1/(8 pi^2)) sin(phi) dtheta dphi dpsi
                let w = w_phi * (std::f64::consts::PI / 2.0) * phi.sin()
                    / (8.0 * std::f64::consts::PI * std::f64::consts::PI)
                    * (2.0 * std::f64::consts::PI / n_ang as f64).powi(2);
                for i1 in 0..d1 * d1 {
                    let v1 = t1[i1].conj() * w;
                    for i2 in 0..d2 * d2 {
                        gram[i1 * d2 * d2 + i2] += v1 * t2[i2];
                    }
                }
            }
        }
    }
    let mut worst: f64 = 0.0;
    for m1 in 0..d1 {
        for n1 in 0..d1 {
            for m2 in 0..d2 {
                for n2 in 0..d2 {
                    let got = gram[(m1 * d1 + n1) * d2 * d2 + m2 * d2 + n2];
                    let expect = if l1 == l2 && m1 == m2 && n1 == n2 {
                        1.0 / (2 * l1 + 1) as f64
                    } else {
                        0.0
                    };
                    worst = worst.max((got - Complex64::new(expect, 0.0)).norm());
                }
            }
        }
    }
    Ok(worst)
}

/// Full (2l+1)^2 matrix of T^l(a) in row-major (m, m') order, m = -l..l.
fn rep_matrix(l: u32, a: &Mat2) -> Result<Vec<Complex64>> {
    let d = (2 * l + 1) as usize;
    let mut out = Vec::with_capacity(d * d);
    for mi in 0..d {
        let m = mi as i32 - l as i32;
        for ni in 0..d {
            let n = ni as i32 - l as i32;
            out.push(wigner_t_int(l, m, n, a)?);
        }
    }
    Ok(out)
}

/// Deterministic pseudo-random SU(2) element for property tests.
pub fn random_su2(state: &mut u64) -> Mat2 {
    let mut next = || {
        *state ^= *state << 13;
        *state ^= *state >> 7;
        *state ^= *state << 17;
        (*state >> 11) as f64 / (1u64 << 53) as f64
    };
    let u1 = next().max(1e-12);
    let u2 = next();
    let u3 = next();
    let a = (1.0 - u1).sqrt();
    let b = u1.sqrt();
    let (t1, t2) = (2.0 * std::f64::consts::PI * u2, 2.0 * std::f64::consts::PI * u3);
    // Haar-ish distributed unit quaternion mapped to SU(2).
    let alpha = C64::new(a * t1.cos(), a * t1.sin());
    let beta = C64::new(b * t2.cos(), b * t2.sin());
    Mat2::new(alpha, beta, -beta.conj(), alpha.conj())
}
