//! The double series of simple fractions representing the boost-line
//! transforms, evaluated in double-double arithmetic with a certified
//! truncation bound.
//!
//! Summation order is deterministic: diagonals n + k = m ascending, n
//! ascending inside each diagonal. Grouped terms b_{n,k} cancel strongly
//! between their simple fractions, which is why the groups are formed in
//! ~31-digit arithmetic.
//!
//! Diagonal sums decay like m^{-(v - q + 1)} where v is the exact
//! vanishing order of the numerator at lambda = 0 and q + 1 the
//! denominator power; v is computed once in exact arithmetic. The engine
//! sums diagonals until they are deep in that power-law regime, then
//! completes the tail by fitting the known inverse powers and summing the
//! fit with Euler-Maclaurin. The reported bound is the difference between
//! successive fit orders plus the rounding slack.

use super::integrand::{Bucket, FractionSeries};
use crate::dd::{Cdd, Dd};
use crate::error::{Error, Result};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy)]
pub struct SeriesEval {
    pub value: Complex64,
    /// certified remainder bound plus rounding slack
    pub bound: f64,
    pub terms: usize,
}

/// Hard cap on the number of (n, k) groups per evaluation.
pub const TERM_BUDGET: usize = 1_000_000;

/// Distance below which an evaluation point is rejected as sitting on a
/// pole of some simple fraction.
pub const POLE_GUARD: f64 = 1e-6;

/// Sum the fraction series at (rho, z), both possibly complex, to the
/// given absolute tolerance on the final value (fronts included).
pub fn series_sum(
    fs: &FractionSeries,
    rho: Complex64,
    z: Complex64,
    tol: f64,
) -> Result<SeriesEval> {
    let front = fs.scale_c64();
    let mut value = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    let mut terms = 0;
    let inner_tol = if front.norm() > 0.0 { tol / front.norm() } else { tol };
    for bucket in &fs.buckets {
        check_poles(&fs.name, bucket, rho, z)?;
        let mult = bucket.mult_num.eval_c64(rho) / bucket.mult_den.eval_c64(rho);
        let local_tol = if mult.norm() > 0.0 { inner_tol / mult.norm() } else { inner_tol };
        let (v, b, t) = bucket_sum(&fs.name, bucket, rho, z, local_tol)?;
        value += mult * v;
        bound += b * mult.norm();
        terms += t;
    }
    Ok(SeriesEval { value: value * front, bound: bound * front.norm(), terms })
}

/// Diagonal sums sum_{n+k=m} b_{n,k} of the first bucket, for regrouping
/// tests against displayed single-series forms.
pub fn diagonal_sums(fs: &FractionSeries, rho: Complex64, z: Complex64, m_max: i64) -> Vec<Complex64> {
    let bucket = &fs.buckets[0];
    let mut state = DiagonalState::new(bucket, rho, z);
    (0..=m_max).map(|m| state.diagonal(bucket, m).0).collect()
}

fn check_poles(name: &str, bucket: &Bucket, rho: Complex64, z: Complex64) -> Result<()> {
    let den = bucket.mult_den.eval_c64(rho);
    let scale = (1.0 + rho.norm()).powi(bucket.mult_den.degree().unwrap_or(0) as i32);
    if den.norm() < POLE_GUARD * scale {
        return Err(Error::Pole {
            context: format!("{name}: rational front factor"),
            nearest: (rho.re, rho.im),
            distance: den.norm() / scale,
        });
    }
    for term in &bucket.poly.terms {
        let s = term.s as f64;
        // a pole needs 2k + 2n + j + z - i s rho = 0 for non-negative n, k
        let tau = Complex64::new(0.0, s) * rho - z;
        if tau.im.abs() > POLE_GUARD {
            continue;
        }
        let base = ((tau.re - term.j as f64) / 2.0).round().max(0.0);
        for off in [-1.0, 0.0, 1.0] {
            let steps = base + off;
            if steps < 0.0 {
                continue;
            }
            let m_tilde = term.j as f64 + 2.0 * steps;
            let dist = (Complex64::new(m_tilde, 0.0) - tau).norm();
            if dist < POLE_GUARD {
                let pole = if term.s == 0 {
                    (rho.re, rho.im)
                } else {
                    let p = Complex64::new(0.0, -s) * (z + m_tilde);
                    (p.re, p.im)
                };
                return Err(Error::Pole {
                    context: format!("{name}: simple fraction with shift {}", term.j),
                    nearest: pole,
                    distance: dist,
                });
            }
        }
    }
    Ok(())
}

struct TermPlan {
    p: u8,
    den_idx: usize,
    coef: Cdd,
}

struct DiagonalState {
    dens: Vec<(i64, i8)>,
    plans: Vec<TermPlan>,
    q: i64,
    zdd: Cdd,
    rdd: Cdd,
    minus_two_z: Cdd,
    max_frac: f64,
}

impl DiagonalState {
    fn new(bucket: &Bucket, rho: Complex64, z: Complex64) -> DiagonalState {
        let zdd = Cdd::from_f64(z.re, z.im);
        let rdd = Cdd::from_f64(rho.re, rho.im);
        let mut dens: Vec<(i64, i8)> = bucket
            .poly
            .terms
            .iter()
            .map(|t| (t.j, t.s))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        dens.sort();
        let max_zpow = bucket.poly.terms.iter().map(|t| t.zpow).max().unwrap_or(0);
        let mut zpows = vec![Cdd::ONE; max_zpow as usize + 1];
        for w in 1..zpows.len() {
            zpows[w] = zpows[w - 1] * zdd;
        }
        let plans = bucket
            .poly
            .terms
            .iter()
            .map(|t| {
                let mut c = Cdd::ZERO;
                for coeff in t.coef.c.iter().rev() {
                    let cc = crate::ratmath::crat_to_c64(coeff);
                    c = c * rdd + Cdd::from_f64(cc.re, cc.im);
                }
                TermPlan {
                    p: t.p,
                    den_idx: dens.binary_search(&(t.j, t.s)).unwrap(),
                    coef: c * zpows[t.zpow as usize],
                }
            })
            .collect();
        DiagonalState {
            dens,
            plans,
            q: bucket.poly.q,
            zdd,
            rdd,
            minus_two_z: -(zdd + zdd),
            max_frac: 0.0,
        }
    }

    /// Sum of the diagonal n + k = m in double-double; returns the complex
    /// value and the number of groups touched.
    ///
    /// Along a diagonal 2k + 2n = 2m is constant, so each distinct (j, s)
    /// has one denominator D = 2m + j + z - i s rho. The running products
    /// r_n = binom(m+q, n+q) (-2z)^n D^{-(n+1)} are advanced by their
    /// bounded ratio (-2z)(m-n)/((n+1+q) D), which both avoids overflow
    /// and lets the loop stop once contributions fall below the group
    /// rounding floor.
    fn diagonal(&mut self, _bucket: &Bucket, m: i64) -> (Complex64, usize) {
        let inv_den: Vec<Cdd> = self
            .dens
            .iter()
            .map(|&(j, s)| {
                let d = Cdd::from_f64((2 * m + j) as f64, 0.0) + self.zdd
                    - Cdd::from_f64(0.0, s as f64) * self.rdd;
                d.recip()
            })
            .collect();
        let mut total = Cdd::ZERO;
        let mut groups = 0usize;
        // the expansion coefficient binom(k+n+q, n+q) vanishes for
        // n + q + 1 <= 0 except at k = 0; handle that lone group first
        let n0 = if self.q >= 0 { 0 } else { -self.q };
        if self.q < 0 && m <= -self.q - 1 {
            // n = m, k = 0, M = n+q+1 <= 0: contributes 1 only when M = 0
            if m + self.q + 1 == 0 {
                let mut pow_z = Cdd::ONE;
                for _ in 0..m {
                    pow_z = pow_z * self.minus_two_z;
                }
                let mut group = Cdd::ZERO;
                for plan in &self.plans {
                    let mut frac = inv_den[plan.den_idx];
                    let mut rising = 1.0;
                    for extra in 1..=plan.p {
                        frac = frac * inv_den[plan.den_idx];
                        rising *= (m + extra as i64) as f64;
                    }
                    for _ in 0..m {
                        frac = frac * inv_den[plan.den_idx];
                    }
                    group = group + (plan.coef * frac).scale(Dd::from_f64(rising));
                }
                total = total + group * pow_z;
                groups += 1;
            }
        }
        if n0 > m {
            return (total.to_c64(), groups.max(1));
        }
        // initial running products at n = n0
        let mut cb0 = 1.0; // binom(m+q, n0+q)
        for i in 1..=(n0 + self.q) {
            cb0 *= (m + self.q - i + 1) as f64 / i as f64;
        }
        let mut run: Vec<Cdd> = inv_den
            .iter()
            .map(|inv| {
                let mut r = inv.scale(Dd::from_f64(cb0));
                for _ in 0..n0 {
                    r = r * self.minus_two_z * *inv;
                }
                r
            })
            .collect();
        let mut floor_hits = 0;
        for n in n0..=m {
            let mut group = Cdd::ZERO;
            let mut level: f64 = 0.0;
            for plan in &self.plans {
                let mut frac = run[plan.den_idx];
                let mut rising = 1.0;
                for extra in 1..=plan.p {
                    frac = frac * inv_den[plan.den_idx];
                    rising *= (n + extra as i64) as f64;
                }
                let piece = (plan.coef * frac).scale(Dd::from_f64(rising));
                group = group + piece;
                level = level.max(piece.norm_hint());
            }
            total = total + group;
            groups += 1;
            self.max_frac = self.max_frac.max(level);
            // advance r_{n} -> r_{n+1}
            let step = Dd::from_f64((m - n) as f64) / Dd::from_f64((n + 1 + self.q) as f64);
            for (r, inv) in run.iter_mut().zip(inv_den.iter()) {
                *r = (*r * self.minus_two_z * *inv).scale(step);
            }
            // contributions decay factorially once n exceeds ~|z|; stop at
            // the double-double floor of the diagonal
            if level < 1e-34 * (total.norm_hint() + self.max_frac * 1e-28) {
                floor_hits += 1;
                if floor_hits >= 3 {
                    break;
                }
            } else {
                floor_hits = 0;
            }
        }
        (total.to_c64(), groups)
    }
}

fn bucket_sum(
    name: &str,
    bucket: &Bucket,
    rho: Complex64,
    z: Complex64,
    tol: f64,
) -> Result<(Complex64, f64, usize)> {
    let mut state = DiagonalState::new(bucket, rho, z);
    // leading decay exponent of the diagonal sums
    let e0 = (bucket.vanish as i64 - bucket.poly.q + 1).max(2) as f64;
    let m_min = 10 + bucket.poly.q.max(0)
        + (z.norm() + rho.im.abs()).ceil() as i64
        + bucket.poly.min_j().unsigned_abs() as i64;

    let mut partial = Complex64::new(0.0, 0.0);
    let mut diags: Vec<Complex64> = Vec::new();
    let mut terms = 0usize;
    let mut m = 0i64;
    // best completed value so far: grouped rounding noise eventually floors
    // the diagonals, so deteriorating fits mean the floor is reached
    let mut best: Option<(Complex64, f64, i64)> = None;
    loop {
        let (d, groups) = state.diagonal(bucket, m);
        partial += d;
        diags.push(d);
        terms += groups;
        if terms > TERM_BUDGET {
            return match best {
                Some((v, e, _)) => Ok((v, e + state.max_frac * 1e-30, terms)),
                None => Err(Error::Budget { context: name.into(), terms }),
            };
        }
        if m >= m_min && m >= 24 && monotone_tail(&diags, m as usize) {
            let noise = state.max_frac * 1e-30 * (terms as f64).sqrt();
            // fast path: raw power-law tail already below tolerance
            let raw_tail = diags[m as usize].norm() * m as f64 / (e0 - 1.0) * 4.0;
            if raw_tail < tol {
                return Ok((partial, raw_tail + noise, terms));
            }
            // asymptotic completion of the tail
            if let Some((tail, err)) = fitted_tail(&diags, m as usize, e0) {
                let err = err + noise;
                if err < tol * 0.5 {
                    return Ok((partial + tail, err, terms));
                }
                match &best {
                    Some((_, best_err, best_m)) => {
                        if err < *best_err {
                            best = Some((partial + tail, err, m));
                        } else if m > best_m * 2 && *best_err < f64::INFINITY {
                            // the rounding floor dominates: report the best
                            // achieved bound instead of grinding on
                            let (v, e, _) = best.unwrap();
                            if e < tol {
                                return Ok((v, e, terms));
                            }
                            return Err(Error::Precision {
                                context: format!("{name}: series truncation"),
                                achieved: e,
                            });
                        }
                    }
                    None => best = Some((partial + tail, err, m)),
                }
            }
        }
        m += 1;
    }
}

fn monotone_tail(diags: &[Complex64], m: usize) -> bool {
    m >= 6
        && diags[m].norm() <= diags[m - 2].norm() * 1.0001
        && diags[m - 2].norm() <= diags[m - 4].norm() * 1.0001
        && diags[m].norm() > 0.0
}

/// Fit the last diagonals with a_i m^{-(e0+i)} and sum the fitted tail
/// analytically; the error estimate compares successive fit orders.
pub fn fitted_tail_debug(diags: &[Complex64], m: usize, e0: f64) -> Option<(Complex64, f64)> { fitted_tail(diags, m, e0) }

fn fitted_tail(diags: &[Complex64], m: usize, e0: f64) -> Option<(Complex64, f64)> {
    let fit = |orders: usize| -> Option<Complex64> {
        // samples spread over the last stretch of computed diagonals; the
        // basis is the dimensionless (m/mi)^{e0+p} so the solve stays
        // well conditioned at large m
        let h = ((m / 8).max(1)).min(60);
        let m_ref = m as f64;
        let mut rows = Vec::with_capacity(orders);
        let mut rhs = Vec::with_capacity(orders);
        for i in 0..orders {
            let mi = m.checked_sub(i * h)?;
            if mi < 4 {
                return None;
            }
            let row: Vec<f64> = (0..orders)
                .map(|p| (m_ref / mi as f64).powf(e0 + p as f64))
                .collect();
            rows.push(row);
            rhs.push(diags[mi]);
        }
        let coeffs = solve_complex(rows, rhs)?;
        let mut tail = Complex64::new(0.0, 0.0);
        for (p, a) in coeffs.iter().enumerate() {
            let s = e0 + p as f64;
            tail += a * (m_ref.powf(s) * hurwitz_tail(s, (m + 1) as f64));
        }
        Some(tail)
    };
    let t_hi = fit(5)?;
    let t_lo = fit(4)?;
    let err = (t_hi - t_lo).norm() * 8.0 + diags[m].norm() * 1e-12;
    Some((t_hi, err))
}

/// sum_{u >= a} u^{-s} by Euler-Maclaurin.
fn hurwitz_tail(s: f64, a: f64) -> f64 {
    a.powf(1.0 - s) / (s - 1.0) + 0.5 * a.powf(-s) + s * a.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * a.powf(-s - 3.0) / 720.0
}

/// Solve a small complex linear system (real matrix, complex rhs).
fn solve_complex(mut a: Vec<Vec<f64>>, mut b: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| {
            a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap()
        })?;
        if a[pivot][col].abs() < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let f = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= f * a[col][k];
            }
            let scaled = b[col] * f;
            b[row] -= scaled;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for col in (0..n).rev() {
        let mut acc = b[col];
        for k in (col + 1)..n {
            acc -= x[k] * a[col][k];
        }
        x[col] = acc / a[col][col];
    }
    Some(x)
}

/// Quadrature of the same transform for real rho and Re z > 1, as the
/// independent oracle for the series. Includes the fraction-series fronts.
pub fn transform_quadrature(
    fs: &FractionSeries,
    rho: f64,
    z: f64,
    tol: f64,
) -> Result<(Complex64, f64)> {
    if z <= 1.0 {
        return Err(crate::error::domain(
            "direct quadrature of the transform converges only for z > 1",
        ));
    }
    let rc = Complex64::new(rho, 0.0);
    let zc = Complex64::new(z, 0.0);
    let mut f = |lam: f64| {
        if lam < 1e-8 {
            return Complex64::new(0.0, 0.0);
        }
        fs.integrand_eval(lam, rc, zc) * (-z * lam * (lam.cosh() / lam.sinh())).exp()
    };
    crate::quad::half_line(&mut f, (z - 1.0).min(1.0), rho.abs() + 1.0, tol)
}
