//! Matrix elements of the unitary irreducible representations of SL(2,C)
//! along the boost subgroup: integral representations evaluated by
//! adaptive quadrature, a catalogue of closed forms, and the leading
//! coefficients of the expansions at small rapidity and large spectral
//! parameter.

use crate::error::{domain, unsupported, Result};
use crate::quad;
use crate::special::{jacobi_p, legendre_p, Half};
use num_complex::Complex64;

type C = Complex64;

/// Label (l0, l1) of an irreducible representation. The principal series
/// has l1 = i rho; the supplementary series has l0 = 0 and real l1 in
/// (-1, 1). Labels (l0, l1) and (-l0, -l1) carry identical matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepLabel {
    pub l0: i32,
    pub l1: C,
}

impl RepLabel {
    pub fn principal(l0: i32, rho: f64) -> RepLabel {
        RepLabel { l0, l1: C::new(0.0, rho) }
    }

    pub fn supplementary(sigma: f64) -> Result<RepLabel> {
        if !(-1.0..1.0).contains(&sigma) {
            return Err(domain(format!(
                "supplementary parameter {sigma} outside (-1, 1)"
            )));
        }
        Ok(RepLabel { l0: 0, l1: C::new(sigma, 0.0) })
    }

    /// The representation carried by the photon-cloud matrix A.
    pub fn a_label() -> RepLabel {
        RepLabel { l0: 1, l1: C::new(0.0, 0.0) }
    }

    pub fn rho(&self) -> f64 {
        self.l1.im
    }
}

/// The monic polynomial Q of degree l+l' whose roots follow the fixed
/// alternating pattern -i, i, -2i, 2i, ... with the last |l - l'| roots
/// keeping a constant sign: positive imaginary part roots enter as
/// (k i + rho) factors when l > l', negative ones when l < l'.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicQ {
    /// The purely imaginary numbers c_k in the factors (c_k + rho).
    pub shifts: Vec<C>,
}

impl MonicQ {
    pub fn new(l: u32, lp: u32) -> MonicQ {
        let lo = l.min(lp);
        let hi = l.max(lp);
        let mut shifts = Vec::with_capacity((l + lp) as usize);
        for k in 1..=lo {
            shifts.push(C::new(0.0, -(k as f64)));
            shifts.push(C::new(0.0, k as f64));
        }
        let sign = if l > lp { 1.0 } else { -1.0 };
        for k in (lo + 1)..=hi {
            shifts.push(C::new(0.0, sign * k as f64));
        }
        MonicQ { shifts }
    }

    pub fn degree(&self) -> usize {
        self.shifts.len()
    }

    pub fn eval(&self, rho: C) -> C {
        self.shifts.iter().fold(C::new(1.0, 0.0), |acc, c| acc * (c + rho))
    }
}

/// Matrix element U^{(l0,l1)}_{l,m; l',m'} at the boost of rapidity
/// `lambda`, by adaptive quadrature of the integral representation
///
///   (1/2) sqrt((2l'+1)(2l+1)) cosh(lambda)^{l1-1}
///       int_{-1}^{1} (1 - t y)^{l1-1} conj(P^{l'}_{l0,m}(y))
///                    P^{l}_{l0,m}((y-t)/(1-ty)) dy,   t = tanh(lambda).
///
/// The element vanishes identically for m' != m.
pub fn u_matrix_element_quadrature(
    label: RepLabel,
    l: u32,
    m: i32,
    lp: u32,
    mp: i32,
    lambda: f64,
    tol: f64,
) -> Result<C> {
    if lambda < 0.0 {
        return Err(domain("boost matrix elements need lambda >= 0"));
    }
    let l0 = label.l0.unsigned_abs();
    if l0 > l.min(lp) || m.unsigned_abs() > l.min(lp) {
        return Err(domain(format!(
            "indices (l0={l0}, l={l}, m={m}, l'={lp}) outside the weight ladder"
        )));
    }
    if m != mp {
        return Ok(C::new(0.0, 0.0));
    }
    if lambda == 0.0 {
        return Ok(if l == lp { C::new(1.0, 0.0) } else { C::new(0.0, 0.0) });
    }
    let t = lambda.tanh();
    let l1m1 = label.l1 - C::new(1.0, 0.0);
    let hl = Half::int(l as i32);
    let hlp = Half::int(lp as i32);
    let hl0 = Half::int(label.l0);
    let hm = Half::int(m);
    let mut f = |y: f64| -> C {
        let w = (y - t) / (1.0 - t * y);
        let base = C::new(1.0 - t * y, 0.0);
        let phase = (l1m1 * base.ln()).exp();
        let left = jacobi_p(hlp, hl0, hm, y).unwrap().conj();
        let right = jacobi_p(hl, hl0, hm, w).unwrap();
        phase * left * right
    };
    let osc = label.rho().abs() * (1.0 + lambda);
    let (integral, err) = quad::adaptive_oscillatory(&mut f, -1.0, 1.0, osc, tol)?;
    let norm = 0.5 * (((2 * l + 1) * (2 * lp + 1)) as f64).sqrt();
    let cosh_pow = (l1m1 * C::new(lambda.cosh().ln(), 0.0)).exp();
    let value = cosh_pow * integral * norm;
    if err > tol.max(1e-14) * value.norm().max(1.0) * 10.0 {
        return Err(crate::error::Error::Precision {
            context: "principal-series matrix element quadrature".into(),
            achieved: err,
        });
    }
    Ok(value)
}

/// Matrix element of the representation A = U^{(1,0)} in its Legendre
/// integral realization (real-valued):
///
///   A_{l,m; l',m} = N int_{-1}^{1} P_{l,m}(y) P_{l',m}((t+y)/(1+ty)) dy.
pub fn rep_a_element(l: u32, m: i32, lp: u32, mp: i32, lambda: f64) -> Result<f64> {
    if l == 0 || lp == 0 {
        return Err(domain("the representation A starts at weight 1"));
    }
    if m.unsigned_abs() > l.min(lp) {
        return Err(domain("azimuthal index out of range"));
    }
    if m != mp {
        return Ok(0.0);
    }
    let neg = lambda < 0.0;
    let lam = lambda.abs();
    if lam < 1e-300 {
        return Ok(if l == lp { 1.0 } else { 0.0 });
    }
    let t = lam.tanh();
    let mut f = |y: f64| -> C {
        let w = (t + y) / (1.0 + t * y);
        C::new(
            legendre_p(l, m, y).unwrap() * legendre_p(lp, m, w).unwrap(),
            0.0,
        )
    };
    let (integral, _) = quad::adaptive(&mut f, -1.0, 1.0, 1e-12)?;
    let value = a_norm_factor(l, m, lp) * integral.re;
    // Parity along the boost: A_{l,m;l',m}(-lambda) = (-1)^{l+l'} A(lambda).
    Ok(if neg && (l + lp) % 2 == 1 { -value } else { value })
}

fn a_norm_factor(l: u32, m: i32, lp: u32) -> f64 {
    let lf = l as f64;
    let lpf = lp as f64;
    let num = lf * (lf + 1.0) * (2.0 * lf + 1.0) * (2.0 * lpf + 1.0);
    let den = lpf * (lpf + 1.0) * 4.0;
    let fact_ratio = |l: u32, m: i32| -> f64 {
        // (l-m)!/(l+m)!
        let (a, b) = ((l as i64 - m as i64) as u64, (l as i64 + m as i64) as u64);
        let mut r = 1.0;
        for k in (a.min(b) + 1)..=(a.max(b)) {
            r *= k as f64;
        }
        if a >= b {
            r
        } else {
            1.0 / r
        }
    };
    (num / den * fact_ratio(l, m) * fact_ratio(lp, m)).sqrt()
}

/// Closed-form catalogue of boost matrix elements: the spherical
/// (0,0) x (l',0) family for l0 = 0, and the six displayed weight-one
/// elements for l0 in {0, 1}. Uncatalogued indices report
/// `UnsupportedCase` so callers can fall back to quadrature.
pub fn u_matrix_element_closed(
    label: RepLabel,
    l: u32,
    m: i32,
    lp: u32,
    mp: i32,
    lambda: f64,
) -> Result<C> {
    if m != mp {
        return Ok(C::new(0.0, 0.0));
    }
    if label.l1.re != 0.0 {
        return Err(unsupported("closed forms are catalogued for the principal series"));
    }
    let rho = label.rho();
    let l0 = label.l0;
    let s = lambda.sinh();
    let c = lambda.cosh();
    let (sr, cr) = ((rho * lambda).sin(), (rho * lambda).cos());
    match (l0, l, m, lp) {
        (0, 0, 0, _) => Ok(u_spherical_row0(lp, rho, lambda)),
        (0, 1, 0, 1) => {
            let f = 6.0 * c / (rho * (rho * rho + 1.0));
            Ok(C::new(
                f * ((rho * rho + 1.0) * sr / (2.0 * s * c)
                    + rho * cr / (s * s)
                    - (c / s) * sr / (s * s)),
                0.0,
            ))
        }
        (0, 1, 1, 1) | (0, 1, -1, 1) => Ok(C::new(
            3.0 * c * sr / ((rho * rho * rho + rho) * s * s * s)
                - 3.0 * cr / ((rho * rho + 1.0) * s * s),
            0.0,
        )),
        (1, 1, 0, 1) => {
            let t3 = lambda.tanh().powi(3);
            Ok(C::new(
                3.0 / (c * c) * (sr / (rho * (rho * rho + 1.0) * t3)
                    - lambda.tanh() * cr / ((rho * rho + 1.0) * t3)),
                0.0,
            ))
        }
        (1, 1, 1, 1) => {
            let em = C::new(0.0, -rho * lambda).exp();
            let num = C::new(-2.0 * sr, 0.0)
                + (C::new(0.0, 2.0 * rho * rho * s * s) + C::new(rho * (2.0 * lambda).sinh(), 0.0))
                    * em;
            Ok(num * 3.0 / (4.0 * rho * (rho * rho + 1.0) * s * s * s))
        }
        (1, 1, -1, 1) => {
            Ok(u_matrix_element_closed(label, 1, 1, 1, 1, lambda)?.conj())
        }
        _ => Err(unsupported(format!(
            "no closed form catalogued for l0={l0}, (l,m)=({l},{m}), l'={lp}"
        ))),
    }
}

/// The spherical first-row element U^{(0,i rho)}_{0,0; l,0} obtained from
/// repeated integration by parts:
/// sqrt(2l+1) (-1)^{l+1} / (2 prod_{s=0}^{l}(-is + rho) sinh^{l+1})
///   * sum_{k} p_{l,k} sum_{j=1}^{k+1} i^j k!/(k-j+1)! [ ... ].
fn u_spherical_row0(l: u32, rho: f64, lambda: f64) -> C {
    if l == 0 {
        if rho.abs() < 1e-8 {
            // limit rho -> 0 of sin(rho lambda)/(rho sinh lambda)
            let x = rho * lambda;
            return C::new(lambda / lambda.sinh() * (1.0 - x * x / 6.0), 0.0);
        }
        return C::new((rho * lambda).sin() / (rho * lambda.sinh()), 0.0);
    }
    let s = lambda.sinh();
    let c = lambda.cosh();
    let ep = C::new(0.0, rho * lambda).exp();
    let em = ep.conj();
    let p_coeffs = crate::special::legendre_coeffs(l);
    let prod_tail = |j: u32| -> C {
        let mut acc = C::new(1.0, 0.0);
        for sidx in j..=l {
            acc *= C::new(rho, -(sidx as f64));
        }
        acc
    };
    let mut sum = C::new(0.0, 0.0);
    for k in 0..=l {
        let pk = crate::ratmath::rat_to_f64(&p_coeffs[k as usize]);
        if pk == 0.0 {
            continue;
        }
        let mut fall = 1.0; // k!/(k-j+1)! for the current j
        for j in 1..=(k + 1) {
            if j >= 2 {
                fall *= (k + 2 - j) as f64;
            }
            let ij = C::new(0.0, 1.0).powu(j);
            let tail = prod_tail(j);
            let sl = s.powi((l + 1 - j) as i32);
            let plus = sl * (c + s).powi(j as i32 - 1);
            let minus = sl * (c - s).powi(j as i32 - 1);
            let sign = if (k + 1 - j) % 2 == 0 { 1.0 } else { -1.0 };
            sum += ij * fall * pk * (tail * ep * plus - tail * em * minus * sign);
        }
    }
    let mut denom = C::new(1.0, 0.0);
    for sidx in 0..=l {
        denom *= C::new(rho, -(sidx as f64));
    }
    let front = ((2 * l + 1) as f64).sqrt() * if l % 2 == 0 { -1.0 } else { 1.0 };
    sum * front / (2.0 * denom * s.powi(l as i32 + 1))
}

/// Leading coefficient and vanishing order of the boost matrix element at
/// small rapidity: U_{l,m; l',m} = u0 lambda^{|l-l'|} + O(lambda^{|l-l'|+1}).
pub fn u_small_lambda_coeff(label: RepLabel, l: u32, m: i32, lp: u32, mp: i32) -> Result<(C, u32)> {
    if m != mp {
        return Err(domain("small-rapidity expansion is diagonal in m"));
    }
    if m.unsigned_abs() > l.min(lp) || label.l0.unsigned_abs() > l.min(lp) {
        return Err(domain("indices outside the weight ladder"));
    }
    let order = l.abs_diff(lp);
    if order == 0 {
        return Ok((C::new(1.0, 0.0), 0));
    }
    // Ladder factor of the integral realization. Relative to real-basis
    // conventions the factor sqrt(k^2 - l1^2) appears in its analytic form
    // (k -+ l1), so principal-series off-diagonal coefficients carry the
    // phase prod (k -+ i rho)/sqrt(k^2 + rho^2); the modulus is unchanged.
    let c_factor = |weight: u32, upward: bool| -> C {
        let wf = weight as f64;
        let l0f = label.l0 as f64;
        let m2 = (m * m) as f64;
        let a = ((wf * wf - m2).max(0.0)).sqrt() / wf;
        let real = ((wf * wf - l0f * l0f) / (4.0 * wf * wf - 1.0)).sqrt();
        let ladder = if upward {
            C::new(wf, 0.0) - label.l1
        } else {
            C::new(wf, 0.0) + label.l1
        };
        ladder * real * a
    };
    let mut prod = C::new(1.0, 0.0);
    if l > lp {
        // rows below the diagonal pick up the alternating sign
        for j in 0..order {
            prod *= c_factor(l - j, false);
        }
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        let fact: f64 = (1..=order).map(|k| k as f64).product();
        Ok((prod * sign / fact, order))
    } else {
        for j in 0..order {
            prod *= c_factor(l + j + 1, true);
        }
        let fact: f64 = (1..=order).map(|k| k as f64).product();
        Ok((prod / fact, order))
    }
}

/// Which large-rho leading coefficient is requested.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LeadingCase {
    /// m = +l0 (l0 > 0): only the e^{-i rho lambda} phase reaches top degree.
    AzimuthPlusL0,
    /// m = -l0 (l0 > 0): only the e^{+i rho lambda} phase reaches top degree.
    AzimuthMinusL0,
    /// l0 = 1, m = 0.
    SpinOneMZero,
    /// l0 = 0, m = 0.
    SphericalMZero,
}

/// Leading coefficients of the top-degree numerator polynomials in the
/// partial-fraction closed form of the boost matrix element, for the four
/// catalogued cases. Returns (p_plus, p_minus, degree): the coefficient of
/// rho^degree multiplying e^{+-i rho lambda}, None when that phase stays at
/// lower degree.
pub fn u_large_rho_leading(
    l0: u32,
    l: u32,
    lp: u32,
    case: LeadingCase,
) -> Result<(Option<C>, Option<C>, u32)> {
    let c = 0.5 * (((2 * l + 1) * (2 * lp + 1)) as f64).sqrt();
    let i = C::new(0.0, 1.0);
    let par = if (l + lp) % 2 == 0 { 1.0 } else { -1.0 };
    // Values below are pinned by fitting the exp(+-i rho lambda)/rho envelope
    // of the quadrature at large rho; they agree with the catalogued closed
    // forms of the weight-one elements and the spherical first row.
    match case {
        LeadingCase::SphericalMZero => {
            if l0 != 0 {
                return Err(unsupported("spherical case needs l0 = 0"));
            }
            Ok((
                Some(C::new(par * c, 0.0) / i),
                Some(C::new(-c, 0.0) / i),
                l + lp,
            ))
        }
        LeadingCase::AzimuthMinusL0 => {
            if l0 == 0 {
                return Err(unsupported("azimuth case needs l0 > 0"));
            }
            Ok((Some(C::new(par * c, 0.0) / i), None, l + lp))
        }
        LeadingCase::AzimuthPlusL0 => {
            if l0 == 0 {
                return Err(unsupported("azimuth case needs l0 > 0"));
            }
            Ok((None, Some(C::new(-c, 0.0) / i), l + lp))
        }
        LeadingCase::SpinOneMZero => {
            if l0 != 1 {
                return Err(unsupported("this case is catalogued for l0 = 1"));
            }
            let root = ((l * (l + 1) * lp * (lp + 1)) as f64).sqrt();
            Ok((
                Some(C::new(-par * c * root / 2.0, 0.0)),
                Some(C::new(-c * root / 2.0, 0.0)),
                l + lp - 1,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-11;

    #[test]
    fn monic_q_worked_pattern() {
        // l = 2, l' = 5 pattern: -i, i, -2i, 2i, -3i, -4i, -5i
        let q = MonicQ::new(2, 5);
        let expected: Vec<C> = [-1.0, 1.0, -2.0, 2.0, -3.0, -4.0, -5.0]
            .iter()
            .map(|&k| C::new(0.0, k))
            .collect();
        assert_eq!(q.shifts, expected);
        assert_eq!(q.degree(), 7);
        let q = MonicQ::new(5, 2);
        assert_eq!(q.shifts[4], C::new(0.0, 3.0));
        assert_eq!(q.shifts[6], C::new(0.0, 5.0));
    }

    #[test]
    fn spherical_trivial_element() {
        // U^{(0, i rho)}_{0,0;0,0} = sin(rho lambda)/(rho sinh lambda)
        let label = RepLabel::principal(0, 1.0);
        let v = u_matrix_element_quadrature(label, 0, 0, 0, 0, 1.0, 1e-12).unwrap();
        let expect = 1.0f64.sin() / 1.0f64.sinh();
        assert!((v.re - expect).abs() < TOL && v.im.abs() < TOL, "{v}");
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for (l0, l, m, lp) in [
            (0u32, 1u32, 0i32, 1u32),
            (0, 1, 1, 1),
            (0, 1, -1, 1),
            (1, 1, 0, 1),
            (1, 1, 1, 1),
            (1, 1, -1, 1),
            (0, 0, 0, 1),
            (0, 0, 0, 2),
            (0, 0, 0, 3),
            (0, 0, 0, 4),
        ] {
            for rho in [0.7, 1.0, 2.3] {
                for lam in [0.4, 1.0, 1.9] {
                    let label = RepLabel::principal(l0 as i32, rho);
                    let closed = u_matrix_element_closed(label, l, m, lp, m, lam).unwrap();
                    let quad = u_matrix_element_quadrature(label, l, m, lp, m, lam, 1e-12).unwrap();
                    let scale = quad.norm().max(1e-3);
                    assert!(
                        (closed - quad).norm() < 1e-9 * scale,
                        "l0={l0} l={l} m={m} l'={lp} rho={rho} lam={lam}: {closed} vs {quad}"
                    );
                }
            }
        }
    }

    #[test]
    fn opposite_m_conjugate() {
        let label = RepLabel::principal(1, 1.4);
        let up = u_matrix_element_closed(label, 1, 1, 1, 1, 0.9).unwrap();
        let dn = u_matrix_element_closed(label, 1, -1, 1, -1, 0.9).unwrap();
        assert!((up.conj() - dn).norm() < 1e-12);
    }

    #[test]
    fn uncatalogued_reports_unsupported() {
        let label = RepLabel::principal(0, 1.0);
        assert!(matches!(
            u_matrix_element_closed(label, 2, 0, 2, 0, 1.0),
            Err(crate::error::Error::UnsupportedCase(_))
        ));
    }

    #[test]
    fn a_element_closed_values() {
        // A_{1,0;1,0} = 3(lambda coth lambda - 1)/sinh^2, checked on a grid
        for lam in [0.3, 0.7, 1.0, 1.6, 2.5] {
            let got = rep_a_element(1, 0, 1, 0, lam).unwrap();
            let expect = 3.0 * (lam * lam.cosh() / lam.sinh() - 1.0) / lam.sinh().powi(2);
            assert!((got - expect).abs() < 1e-10, "lam={lam}: {got} vs {expect}");
            let got = rep_a_element(1, 1, 1, 1, lam).unwrap();
            let expect = 3.0 * (lam.sinh() * lam.cosh() - lam) / (2.0 * lam.sinh().powi(3));
            assert!((got - expect).abs() < 1e-10);
        }
        // spot value at lambda = 1: 3(coth 1 - 1)/sinh^2(1)
        let got = rep_a_element(1, 0, 1, 0, 1.0).unwrap();
        let coth1 = 1.0f64.cosh() / 1.0f64.sinh();
        assert!((got - 3.0 * (coth1 - 1.0) / 1.0f64.sinh().powi(2)).abs() < 1e-10);
        assert!((got - 0.680).abs() < 1e-3);
    }

    #[test]
    fn a_element_parity() {
        for (l, lp) in [(1u32, 2u32), (2, 2), (1, 3), (2, 3)] {
            let plus = rep_a_element(l, 0, lp, 0, 1.1).unwrap();
            let minus = rep_a_element(l, 0, lp, 0, -1.1).unwrap();
            let sign = if (l + lp) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((plus - sign * minus).abs() < 1e-10);
        }
    }

    #[test]
    fn a_equals_u_with_unit_label() {
        // A is the (l0=1, l1=0) representation
        for (l, m, lp) in [(1u32, 0i32, 1u32), (1, 1, 1), (1, 0, 2), (2, 1, 2), (2, 0, 3)] {
            for lam in [0.5, 1.2] {
                let a = rep_a_element(l, m, lp, m, lam).unwrap();
                let u = u_matrix_element_quadrature(RepLabel::a_label(), l, m, lp, m, lam, 1e-12)
                    .unwrap();
                assert!((a - u.re).abs() < 1e-9 && u.im.abs() < 1e-10, "l={l} m={m} lp={lp}");
            }
        }
    }

    #[test]
    fn small_lambda_coefficient_matches_quadrature_fit() {
        let cases = [
            (RepLabel::a_label(), 1u32, 0i32, 2u32),
            (RepLabel::a_label(), 2, 0, 1),
            (RepLabel::principal(0, 1.3), 1, 0, 3),
            (RepLabel::principal(1, 0.8), 2, 1, 1),
            (RepLabel::principal(2, 1.1), 2, 0, 4),
        ];
        for (label, l, m, lp) in cases {
            let (u0, order) = u_small_lambda_coeff(label, l, m, lp, m).unwrap();
            assert_eq!(order, l.abs_diff(lp));
            // polynomial extrapolation of U / lambda^order to lambda = 0
            let f = |lam: f64| {
                u_matrix_element_quadrature(label, l, m, lp, m, lam, 1e-13).unwrap()
                    / lam.powi(order as i32)
            };
            let nodes: Vec<f64> = (1..=6).map(|j| 0.02 * j as f64).collect();
            let mut vals: Vec<C> = nodes.iter().map(|&h| f(h)).collect();
            // Neville tableau evaluated at 0
            for stage in 1..nodes.len() {
                for j in 0..(nodes.len() - stage) {
                    let (x0, x1) = (nodes[j], nodes[j + stage]);
                    vals[j] = (vals[j] * x1 - vals[j + 1] * x0) / (x1 - x0);
                }
            }
            let fitted = vals[0];
            assert!(
                (fitted - u0).norm() < 1e-6 * u0.norm().max(1.0),
                "label={label:?} l={l} m={m} lp={lp}: fit {fitted} vs {u0}"
            );
        }
        // diagonal coefficient is exactly one
        let (u0, order) = u_small_lambda_coeff(RepLabel::principal(0, 2.0), 2, 1, 2, 1).unwrap();
        assert_eq!((u0, order), (C::new(1.0, 0.0), 0));
        // frozen example: l0=1, l1=0, l=1, l'=2, m=0 has u0 = C_{2,0} = sqrt(4/5)
        let (u0, _) = u_small_lambda_coeff(RepLabel::a_label(), 1, 0, 2, 0).unwrap();
        assert!((u0.re - (4.0f64 / 5.0).sqrt()).abs() < 1e-13 && u0.im.abs() < 1e-15);
        // sign alternation for l > l'
        let (u0, _) = u_small_lambda_coeff(RepLabel::a_label(), 2, 0, 1, 0).unwrap();
        assert!(u0.re < 0.0);
    }

    #[test]
    fn large_rho_leading_coefficients_fit_quadrature() {
        let lam = 0.8;
        let fit = |label: RepLabel, l: u32, m: i32, lp: u32, denom_pow: i32, sinh_pow: i32| -> (C, C) {
            // strip the known envelope, then separate the two phases
            let strip = |rho: f64| {
                let u = u_matrix_element_quadrature(label0(label, rho), l, m, lp, m, lam, 1e-12)
                    .unwrap();
                u * rho.powi(denom_pow) * lam.sinh().powi(sinh_pow)
            };
            let extract = |rho: f64| -> (C, C) {
                let shift = std::f64::consts::PI / (2.0 * lam);
                let (f1, f2) = (strip(rho), strip(rho + shift));
                let e1 = C::new(0.0, -rho * lam).exp();
                let e2 = C::new(0.0, -(rho + shift) * lam).exp();
                let p_plus = 0.5 * (f1 * e1 + f2 * e2);
                let p_minus = 0.5 * (f1 * e1.conj() + f2 * e2.conj());
                (p_plus, p_minus)
            };
            // Richardson in 1/rho kills the next asymptotic order
            let (a1, b1) = extract(90.0);
            let (a2, b2) = extract(180.0);
            (2.0 * a2 - a1, 2.0 * b2 - b1)
        };
        fn label0(l: RepLabel, rho: f64) -> RepLabel {
            RepLabel::principal(l.l0, rho)
        }

        // l0=0, m=0, envelope 1/(rho sinh)
        for (l, lp) in [(1u32, 1u32), (1, 2)] {
            let (pp, pm, deg) =
                u_large_rho_leading(0, l, lp, LeadingCase::SphericalMZero).unwrap();
            assert_eq!(deg, l + lp);
            let (fp, fm) = fit(RepLabel::principal(0, 1.0), l, 0, lp, 1, 1);
            assert!((fp - pp.unwrap()).norm() < 0.02 * pp.unwrap().norm());
            assert!((fm - pm.unwrap()).norm() < 0.02 * pm.unwrap().norm());
            assert!(pp.unwrap().norm() > 0.0 && pm.unwrap().norm() > 0.0);
        }
        // l0=1, m=+-1, envelope 1/(rho sinh)
        let (pp, pm, _) = u_large_rho_leading(1, 1, 2, LeadingCase::AzimuthMinusL0).unwrap();
        assert!(pm.is_none());
        let (fp, _) = fit(RepLabel::principal(1, 1.0), 1, -1, 2, 1, 1);
        assert!((fp - pp.unwrap()).norm() < 0.02 * pp.unwrap().norm());
        let (pp2, pm2, _) = u_large_rho_leading(1, 1, 2, LeadingCase::AzimuthPlusL0).unwrap();
        assert!(pp2.is_none());
        let (_, fm2) = fit(RepLabel::principal(1, 1.0), 1, 1, 2, 1, 1);
        assert!((fm2 - pm2.unwrap()).norm() < 0.02 * pm2.unwrap().norm());
        // l0=1, m=0, envelope 1/(rho^2 sinh^2)
        let (pp, pm, deg) = u_large_rho_leading(1, 1, 2, LeadingCase::SpinOneMZero).unwrap();
        assert_eq!(deg, 2);
        let (fp, fm) = fit(RepLabel::principal(1, 1.0), 1, 0, 2, 2, 2);
        assert!((fp - pp.unwrap()).norm() < 0.03 * pp.unwrap().norm(), "{fp} vs {pp:?}");
        assert!((fm - pm.unwrap()).norm() < 0.03 * pm.unwrap().norm());
    }

    #[test]
    fn truncated_unitarity_defect_decreases() {
        let label = RepLabel::principal(0, 1.2);
        let lam = 0.9;
        let defect = |cap: u32| -> f64 {
            let mut s = 0.0;
            for lp in 0..=cap {
                s += u_matrix_element_quadrature(label, 0, 0, lp, 0, lam, 1e-11)
                    .unwrap()
                    .norm_sqr();
            }
            (s - 1.0).abs()
        };
        let (d1, d2, d3) = (defect(4), defect(8), defect(12));
        assert!(d1 > d2 && d2 > d3, "defects {d1} {d2} {d3} not decreasing");
        assert!(d3 < 1e-6);
    }

    #[test]
    fn a_matrix_one_parameter_group_defect_decreases() {
        let (lam1, lam2) = (0.6, 0.8);
        let defect = |cap: u32| -> f64 {
            let mut worst: f64 = 0.0;
            for l in 1..=3u32 {
                for lp in 1..=3u32 {
                    let mut acc = 0.0;
                    for k in 1..=cap {
                        acc += rep_a_element(l, 0, k, 0, lam1).unwrap()
                            * rep_a_element(k, 0, lp, 0, lam2).unwrap();
                    }
                    let direct = rep_a_element(l, 0, lp, 0, lam1 + lam2).unwrap();
                    worst = worst.max((acc - direct).abs());
                }
            }
            worst
        };
        let (d1, d2) = (defect(6), defect(12));
        assert!(d2 < d1, "defects {d1} -> {d2}");
        assert!(d2 < 1e-5);
    }

    #[test]
    fn boost_decay_rate() {
        // |U_{l,m;l',m}| ~ exp(-(||m|-|l0||+1) lambda); fit the log slope.
        for (l0, l, m, lp, expect) in [
            (0i32, 1u32, 0i32, 1u32, -1.0),
            (0, 1, 1, 1, -2.0),
            (1, 1, 0, 1, -2.0),
            (0, 2, 2, 2, -3.0),
        ] {
            let mut pts = Vec::new();
            for i in 0..13 {
                let lam = 2.0 + 0.5 * i as f64;
                // envelope over the oscillation phase: max over a quarter-period rho scan
                let mut env: f64 = 0.0;
                for k in 0..6 {
                    let rho = 0.9 + k as f64 * std::f64::consts::PI / (5.0 * lam);
                    let label = RepLabel::principal(l0, rho);
                    env = env.max(
                        u_matrix_element_quadrature(label, l, m, lp, m, lam, 1e-12)
                            .unwrap()
                            .norm(),
                    );
                }
                pts.push((lam, env.ln()));
            }
            // least squares line; oscillation shows up as scatter, the decay as slope
            let n = pts.len() as f64;
            let sx: f64 = pts.iter().map(|p| p.0).sum();
            let sy: f64 = pts.iter().map(|p| p.1).sum();
            let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
            let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
            let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            assert!(
                (slope - expect).abs() < 0.05 * expect.abs(),
                "l0={l0} l={l} m={m} lp={lp}: slope {slope} vs {expect}"
            );
        }
    }
}
