//! Adaptive Gauss-Legendre quadrature.
//!
//! All integrands in this crate are analytic on the closed integration
//! interval, so fixed-order Gauss-Legendre panels with interval bisection
//! converge spectrally. Oscillatory integrands are handled by sizing the
//! initial panels with the caller-supplied oscillation scale.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton
/// iteration on the Legendre polynomial and cached per order.
/// Caching is invisible to callers: results are bit-identical either way.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Vec<(f64, f64)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rule) = cache.lock().unwrap().get(&n) {
        return rule.clone();
    }
    let rule = compute_rule(n);
    cache.lock().unwrap().insert(n, rule.clone());
    rule
}

fn compute_rule(n: usize) -> Vec<(f64, f64)> {
    assert!(n >= 2);
    let mut rule = Vec::with_capacity(n);
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_deriv(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.push((x, w));
        if !(n % 2 == 1 && i == m - 1) {
            rule.push((-x, w));
        }
    }
    rule.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    rule
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Fixed-order panel integral of a complex-valued function.
pub fn panel<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64, order: usize) -> Complex64 {
    let rule = gauss_legendre(order);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut acc = Complex64::new(0.0, 0.0);
    for &(x, w) in &rule {
        acc += f(c + h * x) * w;
    }
    acc * h
}

/// Adaptive integral over [a, b] with interval bisection.
///
/// A panel is accepted when doubling the order changes it by less than the
/// local share of the tolerance. Returns the value and an error estimate.
pub fn adaptive<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    const ORDER: usize = 24;
    let mut stack = vec![(a, b, 0u32)];
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    while let Some((lo, hi, depth)) = stack.pop() {
        let coarse = panel(f, lo, hi, ORDER);
        let fine = panel(f, lo, hi, 2 * ORDER);
        let delta = (fine - coarse).norm();
        let local_tol = tol * ((hi - lo) / (b - a)).max(1e-3);
        if delta <= local_tol || hi - lo < 1e-13 * (b - a).abs() {
            total += fine;
            err += delta;
        } else {
            if depth > 48 {
                return Err(Error::Precision {
                    context: format!("adaptive quadrature on [{lo}, {hi}]"),
                    achieved: delta,
                });
            }
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid, depth + 1));
            stack.push((mid, hi, depth + 1));
        }
    }
    Ok((total, err))
}

/// Adaptive integral of an oscillatory analytic function over [a, b].
///
/// `osc` is the phase rate (radians per unit length); initial panels are
/// sized so each spans at most a few oscillation periods.
pub fn adaptive_oscillatory<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    a: f64,
    b: f64,
    osc: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    let width = b - a;
    let panels = (1.0 + width * osc.abs() / std::f64::consts::PI).ceil().min(4096.0) as usize;
    let mut total = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for i in 0..panels {
        let lo = a + width * i as f64 / panels as f64;
        let hi = a + width * (i + 1) as f64 / panels as f64;
        let (v, e) = adaptive(f, lo, hi, tol / panels as f64)?;
        total += v;
        err += e;
    }
    Ok((total, err))
}

/// Integral over the half line [0, inf) of a function decaying at least
/// like exp(-decay*x) for large x. The domain is truncated where the decay
/// bound pushes the tail below the tolerance, then split oscillation-aware.
pub fn half_line<F: FnMut(f64) -> Complex64>(
    f: &mut F,
    decay: f64,
    osc: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    if decay <= 0.0 {
        return Err(Error::Domain(
            "half-line quadrature requires a positive decay rate".into(),
        ));
    }
    // Estimate the integrand scale near the origin for the tail cut.
    let scale = (1..=8)
        .map(|i| f(0.25 * i as f64).norm())
        .fold(f64::MIN_POSITIVE, f64::max);
    let cut = ((scale / (tol * decay)).ln().max(1.0) / decay + 10.0 / decay).min(2000.0);
    let (v, e) = adaptive_oscillatory(f, 0.0, cut, osc, tol)?;
    let tail = f(cut).norm() / decay;
    Ok((v, e + tail))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        // order-n rule is exact through degree 2n-1
        let mut f = |x: f64| Complex64::new(x.powi(7) + 3.0 * x * x, 0.0);
        let v = panel(&mut f, -1.0, 1.0, 8);
        assert!((v.re - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_oscillation() {
        let rho = 37.0;
        let mut f = move |x: f64| Complex64::new((rho * x).sin(), 0.0);
        let (v, _) = adaptive_oscillatory(&mut f, 0.0, 1.0, rho, 1e-12).unwrap();
        let exact = (1.0 - (rho * 1.0f64).cos()) / rho;
        assert!((v.re - exact).abs() < 1e-12);
    }

    #[test]
    fn half_line_exponential() {
        let mut f = |x: f64| Complex64::new((-2.0 * x).exp() * (3.0 * x).cos(), 0.0);
        let (v, _) = half_line(&mut f, 2.0, 3.0, 1e-12).unwrap();
        // int exp(-2x)cos(3x) = 2/(4+9)
        assert!((v.re - 2.0 / 13.0).abs() < 1e-11);
    }
}
