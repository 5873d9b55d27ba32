//! Associated Legendre functions of the first and second kind.

use crate::error::{domain, Result};
use crate::ratmath::{binom_int, binom_rat, factorial, rat, Rat};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Associated Legendre function P_{l,m}(y) with the Condon-Shortley phase,
/// so P_{1,1}(0) = -1. Negative m is mapped through the reflection
/// P_{l,-m} = (-1)^m (l-m)!/(l+m)! P_{l,m}.
pub fn legendre_p(l: u32, m: i32, y: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&y) {
        return Err(domain(format!("legendre_p argument y={y} outside [-1,1]")));
    }
    if m.unsigned_abs() > l {
        return Err(domain(format!("legendre_p index m={m} outside [-{l},{l}]")));
    }
    if m < 0 {
        let ma = (-m) as u32;
        let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
        let ratio = sign * factorial((l - ma) as u64).to_f64().unwrap()
            / factorial((l + ma) as u64).to_f64().unwrap();
        return Ok(ratio * legendre_p(l, ma as i32, y)?);
    }
    let m = m as u32;
    // Stable three-term recurrence upward in l.
    let somx2 = ((1.0 - y) * (1.0 + y)).max(0.0).sqrt();
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= -((2 * k - 1) as f64) * somx2;
    }
    if l == m {
        return Ok(pmm);
    }
    let mut pm1 = pmm;
    let mut p = y * (2 * m + 1) as f64 * pmm;
    for ll in (m + 2)..=l {
        let pnew = (y * (2 * ll - 1) as f64 * p - (ll + m - 1) as f64 * pm1) / (ll - m) as f64;
        pm1 = p;
        p = pnew;
    }
    Ok(p)
}

/// P_{l,m} evaluated from the explicit finite sum
/// (-1)^m 2^l (1-y^2)^{m/2} sum_{k=m}^{l} k!/(k-m)! C(l,k) C((l+k-1)/2, l) y^{k-m}.
/// Slower and cancellation-prone at high l; kept as the defining form and
/// as an oracle for the recurrence.
pub fn legendre_p_explicit_sum(l: u32, m: u32, y: f64) -> Result<f64> {
    if m > l {
        return Err(domain("legendre_p index m > l"));
    }
    let coeffs = assoc_coeffs(l, m);
    let mut sum = 0.0;
    for (i, c) in coeffs.iter().enumerate() {
        sum += c.to_f64().unwrap() * y.powi(i as i32);
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * (1.0 - y * y).powf(m as f64 / 2.0) * sum)
}

/// Exact coefficients of the polynomial part of P_{l,m}:
/// P_{l,m}(y) = (-1)^m (1-y^2)^{m/2} * sum_i assoc_coeffs[i] y^i.
pub(crate) fn assoc_coeffs(l: u32, m: u32) -> Vec<Rat> {
    assert!(m <= l);
    let mut out = vec![Rat::zero(); (l - m + 1) as usize];
    let two_l = rat(2).pow(l as i32);
    for k in m..=l {
        let half = BigRational::new(((l + k) as i64 - 1).into(), 2.into());
        let c = Rat::from_integer(factorial(k as u64) / factorial((k - m) as u64))
            * Rat::from_integer(binom_int(l as u64, k as u64))
            * binom_rat(&half, l as u64)
            * &two_l;
        out[(k - m) as usize] = c;
    }
    out
}

/// Exact coefficients p_{l,k} of the Legendre polynomial P_l.
pub fn legendre_coeffs(l: u32) -> Vec<Rat> {
    assoc_coeffs(l, 0)
}

/// Exact coefficients w_{l-1,k} of sum_{k=1}^{l} (1/k) P_{k-1} P_{l-k},
/// the polynomial subtracted from P_l * arctanh in the second-kind function.
pub fn w_coeffs(l: u32) -> Vec<Rat> {
    if l == 0 {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); l as usize];
    for k in 1..=l {
        let a = legendre_coeffs(k - 1);
        let b = legendre_coeffs(l - k);
        let inv_k = Rat::new(1.into(), (k as i64).into());
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                out[i + j] += ai * bj * &inv_k;
            }
        }
    }
    out
}

/// Legendre function of the second kind on |x| > 1:
/// Q_l(x) = P_l(x) (1/2) log((x+1)/(x-1)) - sum_{k=1}^{l} (1/k) P_{k-1}(x) P_{l-k}(x).
///
/// The two pieces cancel to |Q_l| << |P_l log| at large x, so the
/// combination is formed in double-double precision.
pub fn legendre_q(l: u32, x: f64) -> Result<f64> {
    if x.abs() <= 1.0 {
        return Err(domain(format!(
            "legendre_q argument x={x} on the branch cut |x| <= 1"
        )));
    }
    use crate::dd::Dd;
    let pl = legendre_dd(l, x);
    let log_term = atanh_recip_dd(x);
    let mut sum = Dd::ZERO;
    for k in 1..=l {
        sum = sum + legendre_dd(k - 1, x) * legendre_dd(l - k, x) / Dd::from_f64(k as f64);
    }
    Ok((pl * log_term - sum).to_f64())
}

/// Plain Legendre polynomial in double-double, any real argument.
fn legendre_dd(l: u32, x: f64) -> crate::dd::Dd {
    use crate::dd::Dd;
    let x = Dd::from_f64(x);
    let mut p0 = Dd::ONE;
    if l == 0 {
        return p0;
    }
    let mut p1 = x;
    for k in 1..l {
        let p2 = (Dd::from_f64((2 * k + 1) as f64) * x * p1
            - Dd::from_f64(k as f64) * p0)
            / Dd::from_f64((k + 1) as f64);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// atanh(1/x) = (1/2) log((x+1)/(x-1)) in double-double for |x| > 1.
fn atanh_recip_dd(x: f64) -> crate::dd::Dd {
    use crate::dd::Dd;
    if x.abs() < 1.05 {
        // cancellation is mild near the branch point; f64 accuracy suffices
        return Dd::from_f64((1.0 / x).atanh());
    }
    let inv = Dd::ONE / Dd::from_f64(x);
    let inv2 = inv * inv;
    let mut term = inv;
    let mut acc = inv;
    let mut k = 1u32;
    loop {
        term = term * inv2;
        let add = term / Dd::from_f64((2 * k + 1) as f64);
        acc = acc + add;
        if add.to_f64().abs() < 1e-34 * acc.to_f64().abs() || k > 2000 {
            return acc;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(legendre_p(0, 0, 0.3).unwrap(), 1.0);
        assert!((legendre_p(1, 0, 0.5).unwrap() - 0.5).abs() < 1e-15);
        // frozen from the explicit sum: P_{1,1}(0) = -1
        assert!((legendre_p(1, 1, 0.0).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn recurrence_matches_explicit_sum() {
        for l in 0..=8u32 {
            for m in 0..=l {
                for i in 0..9 {
                    let y = -0.96 + 0.24 * i as f64;
                    let a = legendre_p(l, m as i32, y).unwrap();
                    let b = legendre_p_explicit_sum(l, m, y).unwrap();
                    let scale = a.abs().max(1.0);
                    assert!(
                        (a - b).abs() < 1e-11 * scale,
                        "l={l} m={m} y={y}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn negative_m_reflection() {
        let y = 0.37;
        for l in 1..=5u32 {
            for m in 1..=l as i32 {
                let lhs = legendre_p(l, -m, y).unwrap();
                let ratio = factorial((l as i64 - m as i64) as u64).to_f64().unwrap()
                    / factorial((l as i64 + m as i64) as u64).to_f64().unwrap();
                let rhs = if m % 2 == 0 { 1.0 } else { -1.0 } * ratio * legendre_p(l, m, y).unwrap();
                assert!((lhs - rhs).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn q_small_values() {
        // Q_0(2) = (1/2) ln 3, Q_1(2) = 2 Q_0(2) - 1 (both from the defining formula)
        let q0 = legendre_q(0, 2.0).unwrap();
        assert!((q0 - 0.5 * 3.0f64.ln()).abs() < 1e-15);
        let q1 = legendre_q(1, 2.0).unwrap();
        assert!((q1 - (2.0 * q0 - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn q_bonnet_recursion() {
        for l in 1..=8u32 {
            for &x in &[1.3, 2.0, -1.7, 5.5, -9.0] {
                let lhs = (2 * l + 1) as f64 * x * legendre_q(l, x).unwrap();
                let rhs = (l + 1) as f64 * legendre_q(l + 1, x).unwrap()
                    + l as f64 * legendre_q(l - 1, x).unwrap();
                let scale = lhs.abs().max(1.0);
                assert!((lhs - rhs).abs() < 1e-12 * scale, "l={l} x={x}");
            }
        }
    }

    #[test]
    fn p_bonnet_recursion() {
        for l in 1..=10u32 {
            for i in 0..7 {
                let y = -0.9 + 0.3 * i as f64;
                let lhs = (2 * l + 1) as f64 * y * legendre_p(l, 0, y).unwrap();
                let rhs = (l + 1) as f64 * legendre_p(l + 1, 0, y).unwrap()
                    + l as f64 * legendre_p(l - 1, 0, y).unwrap();
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(legendre_p(2, 3, 0.0).is_err());
        assert!(legendre_p(2, 0, 1.5).is_err());
        assert!(legendre_q(3, 0.7).is_err());
    }

    #[test]
    fn exact_coefficients_match_known_polynomials() {
        use crate::ratmath::ratio;
        // P_2 = (3y^2 - 1)/2, P_3 = (5y^3 - 3y)/2
        assert_eq!(legendre_coeffs(2), vec![ratio(-1, 2), rat(0), ratio(3, 2)]);
        assert_eq!(
            legendre_coeffs(3),
            vec![rat(0), ratio(-3, 2), rat(0), ratio(5, 2)]
        );
        // w coefficients for l=2: P_1 P_0 + (1/2) P_0 P_1 = (3/2) y
        assert_eq!(w_coeffs(2), vec![rat(0), ratio(3, 2)]);
    }
}
