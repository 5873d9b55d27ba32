//! Exact closed forms on the boost line: the cocycle components, the
//! photon-cloud matrix elements, and the general principal-series matrix
//! elements, all as `LamExpr` values over x = e^{-lambda} produced by
//! symbolic integration of their defining integral representations.

use super::poly::PolyC;
use super::xfield::{LamExpr, Scaled, XFrac, XPoly};
use crate::ratmath::{binom_int, cint, crat, factorial, i_pow, rat, ratio, CRat, Rat, SqrtRat};
use crate::special::legendre_coeffs;
use num_bigint::BigInt;
use num_complex::Complex;
use num_traits::{One, Zero};

fn crat_rat(r: Rat) -> CRat {
    Complex::new(r, Rat::zero())
}

/// 1/(1 - e^{-2 lambda})^j.
fn x_inv_pow(j: u32) -> XFrac {
    XFrac { num: XPoly::one(), m1: j, p1: 0 }
}

/// The rational building block F[k, lambda]: a combination of inverse
/// powers of (1 - e^{-2 lambda}) arising from iterated integration by
/// parts of the Legendre-kernel integrals. Cached per k.
pub fn f_of_k(k: u32) -> XFrac {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<std::collections::HashMap<u32, XFrac>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&k) {
        return hit.clone();
    }
    let built = f_of_k_build(k);
    cache.lock().unwrap().insert(k, built.clone());
    built
}

fn f_of_k_build(k: u32) -> XFrac {
    let mut acc = XFrac::zero();
    if k < 2 {
        return acc;
    }
    for s in 2..=k {
        acc = acc.add(&x_inv_pow(s - 1).scale_rat(&Rat::new(1.into(), ((s - 1) as i64).into())));
    }
    for j in 1..=k.saturating_sub(1) {
        for s in 0..=(j - 1) {
            let c = Rat::from_integer(binom_int(k as u64, j as u64))
                * Rat::from_integer(binom_int((j - 1) as u64, s as u64))
                * ratio(if s % 2 == 0 { 1 } else { -1 }, (k - s - 1) as i64);
            acc = acc.add(&x_inv_pow(k - s - 1).scale_rat(&c));
        }
    }
    for s in 0..=k.saturating_sub(2) {
        let c = Rat::from_integer(binom_int((k - 1) as u64, s as u64))
            * ratio(if s % 2 == 0 { 1 } else { -1 }, (k - s - 1) as i64);
        acc = acc.add(&x_inv_pow(k - s - 1).scale_rat(&c));
    }
    acc
}

/// The companion block G[k, lambda] = -2 lambda F[k, lambda] + (rational part).
/// Cached per k.
pub fn g_of_k(k: u32) -> LamExpr {
    use std::sync::{Mutex, OnceLock};
    static CACHE: OnceLock<Mutex<std::collections::HashMap<u32, LamExpr>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&k) {
        return hit.clone();
    }
    let built = g_of_k_build(k);
    cache.lock().unwrap().insert(k, built.clone());
    built
}

fn g_of_k_build(k: u32) -> LamExpr {
    let mut expr = LamExpr::from_part(1, 0, f_of_k(k).scale_rat(&rat(-2)));
    if k < 2 {
        return expr;
    }
    let mut rational = XFrac::zero();
    for s in 2..=k {
        for r in 2..=s.saturating_sub(1) {
            let c = Rat::new(BigInt::from(-1), BigInt::from(((s - 1) * (r - 1)) as i64));
            rational = rational.add(&x_inv_pow(r - 1).scale_rat(&c));
        }
    }
    for j in 1..=k.saturating_sub(1) {
        for s in 0..=(j - 1) {
            for r in 2..=(k - s).saturating_sub(1) {
                let c = Rat::from_integer(binom_int(k as u64, j as u64))
                    * Rat::from_integer(binom_int((j - 1) as u64, s as u64))
                    * ratio(
                        if s % 2 == 0 { -1 } else { 1 },
                        ((k - s - 1) * (r - 1)) as i64,
                    );
                rational = rational.add(&x_inv_pow(r - 1).scale_rat(&c));
            }
        }
    }
    for s in 0..=k.saturating_sub(2) {
        for r in 2..=(k - s).saturating_sub(1) {
            let c = Rat::from_integer(binom_int((k - 1) as u64, s as u64))
                * ratio(
                    if s % 2 == 0 { -1 } else { 1 },
                    ((k - s - 1) * (r - 1)) as i64,
                );
            rational = rational.add(&x_inv_pow(r - 1).scale_rat(&c));
        }
    }
    expr.accumulate(0, 0, rational);
    expr
}

/// The limits F[k] = -lim F[k,lambda] and G[k] = lim (G[k,lambda] + 2 lambda F).
pub fn fg_limits(k: u32) -> (Rat, Rat) {
    let eval_at_one = |f: &XFrac| -> Rat {
        // x -> 0 at infinity so every 1/(1-x^2)^j -> 1: sum the numerator at x = 0
        assert_eq!(f.p1, 0);
        if f.num.is_zero() {
            return Rat::zero();
        }
        assert!(f.num.lo >= 0, "negative x powers in limit");
        let c = f.num.coeff(0);
        assert!(c.degree().unwrap_or(0) == 0 || c.is_zero());
        c.coeff(0).re.clone()
    };
    // Every block is a sum of constants over (1-x^2)^j; its limit is the sum
    // of those constants. Reconstruct by clearing to the common denominator:
    // at x = 0 numerator and denominator agree, so read the x^0 coefficient.
    let f_lim = -eval_at_one(&f_of_k(k));
    let g = g_of_k(k);
    let g_rational = g.parts.get(&(0u8, 0i8)).cloned().unwrap_or_else(XFrac::zero);
    let g_lim = eval_at_one(&g_rational);
    (f_lim, g_lim)
}

/// The bracket of the cocycle closed form: the fixed combination of
/// F- and G-blocks weighted by Legendre coefficients.
fn b_bracket(l: u32) -> LamExpr {
    let p_l = legendre_coeffs(l);
    let p_lp1 = legendre_coeffs(l + 1);
    let p_lm1 = if l >= 1 { legendre_coeffs(l - 1) } else { Vec::new() };
    let w_lm1 = crate::special::w_coeffs(l);
    let w_l = crate::special::w_coeffs(l + 1);
    let w_lm2 = if l >= 1 { crate::special::w_coeffs(l - 1) } else { Vec::new() };
    let sign = |k: u32| if k % 2 == 0 { Rat::one() } else { -Rat::one() };

    let mut acc = LamExpr::zero();
    for k in 0..=l {
        let c = &p_l[k as usize] * sign(k);
        acc = acc.add(&g_of_k(k).scale_rat(&c));
    }
    for k in 1..=(l + 2) {
        let c = &p_lp1[(k - 1) as usize] * sign(k) * ratio(-((l + 1) as i64), (2 * l + 1) as i64);
        acc = acc.add(&g_of_k(k).scale_rat(&c));
    }
    for k in 1..=l {
        let c = &p_lm1[(k - 1) as usize] * sign(k) * ratio(-(l as i64), (2 * l + 1) as i64);
        acc = acc.add(&g_of_k(k).scale_rat(&c));
    }
    for k in 0..l {
        let c = &w_lm1[k as usize] * sign(k) * rat(-2);
        acc = acc.add(&LamExpr::from_xfrac(f_of_k(k).scale_rat(&c)));
    }
    for k in 1..=(l + 1) {
        let c = &w_l[(k - 1) as usize] * sign(k) * ratio(2 * (l + 1) as i64, (2 * l + 1) as i64);
        acc = acc.add(&LamExpr::from_xfrac(f_of_k(k).scale_rat(&c)));
    }
    if l >= 2 {
        for k in 1..=(l - 1) {
            let c = &w_lm2[(k - 1) as usize] * sign(k) * ratio(2 * l as i64, (2 * l + 1) as i64);
            acc = acc.add(&LamExpr::from_xfrac(f_of_k(k).scale_rat(&c)));
        }
    }
    let constant = XFrac::constant(crat_rat(ratio(-4, (l * (l + 1)) as i64)));
    acc.add(&LamExpr::from_xfrac(constant))
}

/// Exact cocycle component along the boost, divided by i e:
/// B_{l,0}(lambda) = i e sqrt(radicand) * expr(lambda).
pub fn exact_b(l: u32) -> Scaled<LamExpr> {
    assert!(l >= 1);
    let s = SqrtRat::sqrt_of(rat((l * (l + 1) * (2 * l + 1)) as i64));
    let front = &s.rational * ratio(if l % 2 == 0 { -1 } else { 1 }, 2);
    Scaled { radicand: s.radicand, expr: b_bracket(l).scale_rat(&front) }
}

/// Polynomial in y with XFrac coefficients.
#[derive(Debug, Clone)]
struct PolyY {
    c: Vec<XFrac>,
}

impl PolyY {
    fn zero() -> PolyY {
        PolyY { c: Vec::new() }
    }

    fn constant(f: XFrac) -> PolyY {
        PolyY { c: vec![f] }
    }

    fn coeff(&self, k: usize) -> XFrac {
        self.c.get(k).cloned().unwrap_or_else(XFrac::zero)
    }

    fn add(&self, rhs: &PolyY) -> PolyY {
        let n = self.c.len().max(rhs.c.len());
        PolyY { c: (0..n).map(|k| self.coeff(k).add(&rhs.coeff(k))).collect() }
    }

    fn mul(&self, rhs: &PolyY) -> PolyY {
        if self.c.is_empty() || rhs.c.is_empty() {
            return PolyY::zero();
        }
        let mut c = vec![XFrac::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        PolyY { c }
    }

    fn scale(&self, f: &XFrac) -> PolyY {
        PolyY { c: self.c.iter().map(|a| a.mul(f)).collect() }
    }

    fn pow(&self, n: u32) -> PolyY {
        let mut acc = PolyY::constant(XFrac::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Coefficients in the basis u = 1 + (c1) y, i.e. substitute
    /// y = (u - 1) * c1_inv and expand.
    fn rebase(&self, c1_inv: &XFrac) -> Vec<XFrac> {
        let mut acc: Vec<XFrac> = Vec::new(); // polynomial in u
        for a in self.c.iter().rev() {
            // acc = acc * (u - 1) * c1_inv + a
            let mut next = vec![XFrac::zero(); acc.len() + 1];
            for (i, v) in acc.iter().enumerate() {
                let scaled = v.mul(c1_inv);
                next[i + 1] = next[i + 1].add(&scaled);
                next[i] = next[i].add(&scaled.neg());
            }
            if next.is_empty() {
                next.push(XFrac::zero());
            }
            next[0] = next[0].add(a);
            acc = next;
        }
        acc
    }
}

/// One rotation function P^L_{l0,m} expanded in half-angle monomials of
/// its argument, with the square-root prefactor kept aside.
struct RotExpansion {
    /// parity of l0 + m: odd means a common sqrt(1-arg^2)/2 factor
    odd: bool,
    /// (coef, power of (1+arg)/2, power of (1-arg)/2)
    terms: Vec<(CRat, u32, u32)>,
    sign: i64,
    radicand: Rat,
}

fn rot_expansion(big_l: u32, l0: i32, m: i32) -> RotExpansion {
    let li = big_l as i64;
    let (l0, m) = (l0 as i64, m as i64);
    assert!(l0.unsigned_abs() <= big_l as u64 && m.unsigned_abs() <= big_l as u64);
    let odd = (l0 + m).rem_euclid(2) == 1;
    let radicand = Rat::from_integer(factorial((li - l0) as u64) * factorial((li + l0) as u64))
        / Rat::from_integer(factorial((li - m) as u64) * factorial((li + m) as u64));
    let sign = if (l0 + m).rem_euclid(2) == 0 { 1 } else { -1 };
    let mut terms = Vec::new();
    let lo = 0.max(-l0 - m);
    let hi = (li - l0).min(li - m);
    for alpha in lo..=hi {
        if li - l0 - alpha > li + m || li - l0 - alpha < 0 {
            continue;
        }
        let b = binom_int((li - m) as u64, alpha as u64)
            * binom_int((li + m) as u64, (li - l0 - alpha) as u64);
        if b.is_zero() {
            continue;
        }
        let u = 2 * alpha + l0 + m; // power of cos(half-angle)
        let v = 2 * li - l0 - m - 2 * alpha; // power of (i sin(half-angle))
        debug_assert!(u >= 0 && v >= 0);
        let coef = i_pow(v) * crat_rat(Rat::from_integer(b));
        let (uh, vh) = if odd {
            (((u - 1) / 2) as u32, ((v - 1) / 2) as u32)
        } else {
            ((u / 2) as u32, (v / 2) as u32)
        };
        terms.push((coef, uh, vh));
    }
    RotExpansion { odd, terms, sign, radicand }
}

fn rot_poly(exp: &RotExpansion, plus_half: &PolyY, minus_half: &PolyY) -> PolyY {
    let mut acc = PolyY::zero();
    for (coef, uh, vh) in &exp.terms {
        let term = plus_half
            .pow(*uh)
            .mul(&minus_half.pow(*vh))
            .scale(&XFrac::constant(coef.clone()));
        acc = acc.add(&term);
    }
    acc
}

/// Exact matrix element A_{l,m; l',m}(lambda) of the photon-cloud
/// representation: A = sqrt(radicand) * expr.
pub fn exact_a(l: u32, m: i32, lp: u32) -> Scaled<LamExpr> {
    let m = m.unsigned_abs();
    assert!(l >= 1 && lp >= 1 && m <= l.min(lp));
    let pa = crate::special::assoc_coeffs(l, m);
    let pb = crate::special::assoc_coeffs(lp, m);

    // N(y) = p_{l,m}(y) (1-y^2)^m sum_d pb[d] (t+y)^d (1+ty)^{lp-m-d}
    let y = PolyY { c: vec![XFrac::zero(), XFrac::one()] };
    let t = XFrac::tanh();
    let t_plus_y = PolyY { c: vec![t.clone(), XFrac::one()] };
    let one_plus_ty = PolyY { c: vec![XFrac::one(), t.clone()] };
    let one_minus_y2 = PolyY {
        c: vec![XFrac::one(), XFrac::zero(), XFrac::constant(cint(-1))],
    };
    let mut p_left = PolyY::zero();
    for (k, c) in pa.iter().enumerate() {
        p_left = p_left.add(&y.pow(k as u32).scale(&XFrac::constant(crat_rat(c.clone()))));
    }
    let mut p_right = PolyY::zero();
    for (d, c) in pb.iter().enumerate() {
        let term = t_plus_y
            .pow(d as u32)
            .mul(&one_plus_ty.pow(lp - m - d as u32))
            .scale(&XFrac::constant(crat_rat(c.clone())));
        p_right = p_right.add(&term);
    }
    let n_poly = p_left.mul(&one_minus_y2.pow(m)).mul(&p_right);

    // rebase on u = 1 + t y:  y = (u - 1)/t
    let e = n_poly.rebase(&XFrac::inv_tanh());

    // integrate (1+ty)^{i - lp}; one sech^m from the argument substitution
    let mut total = LamExpr::zero();
    let inv_t = XFrac::inv_tanh();
    for (i, ei) in e.iter().enumerate() {
        if ei.is_zero() {
            continue;
        }
        let r = i as i64 - lp as i64;
        if r == -1 {
            // the logarithmic case integrates to 2 lambda / t
            let term = ei.mul(&inv_t).scale(&cint(2));
            total = total.add(&LamExpr::from_part(1, 0, term));
        } else {
            let jump = XFrac::one_plus_tanh_pow(r + 1).add(&XFrac::one_minus_tanh_pow(r + 1).neg());
            let term = ei
                .mul(&jump)
                .mul(&inv_t)
                .scale(&crat_rat(Rat::new(BigInt::one(), BigInt::from(r + 1))));
            total = total.add(&LamExpr::from_xfrac(term));
        }
    }
    let total = total.mul_xfrac(&XFrac::cosh_pow(-(m as i64)));

    let (li, lpi, mi) = (l as i64, lp as i64, m as i64);
    let norm = rat(li * (li + 1) * (2 * li + 1)) * rat(2 * lpi + 1)
        * Rat::from_integer(factorial((li - mi) as u64) * factorial((lpi - mi) as u64))
        / (rat(4 * lpi * (lpi + 1))
            * Rat::from_integer(factorial((li + mi) as u64) * factorial((lpi + mi) as u64)));
    let s = SqrtRat::sqrt_of(norm);
    Scaled { radicand: s.radicand, expr: total.scale_rat(&s.rational) }
}

/// The monic denominator polynomial rho Q(rho) of the principal-series
/// matrix element with weights (l, l').
pub fn rho_q_poly(l: u32, lp: u32) -> PolyC {
    let q = crate::reps::MonicQ::new(l, lp);
    let mut acc = PolyC::rho();
    for c in &q.shifts {
        let shift = crat(
            crate::ratmath::rat_from_f64(c.re),
            crate::ratmath::rat_from_f64(c.im),
        );
        acc = acc.mul(&PolyC::linear(shift));
    }
    acc
}

/// Exact principal-series matrix element times its denominator:
///
///   U^{(l0, i rho)}_{l,m; l',m}(lambda) * rho Q(rho)
///     = sqrt(radicand) * expr(lambda, rho),
///
/// with expr carrying the phases e^{+- i rho lambda} and rho-polynomial
/// coefficients. Returned together with rho Q(rho).
pub fn exact_u(l0: i32, m: i32, l: u32, lp: u32) -> (Scaled<LamExpr>, PolyC) {
    assert!(l0.unsigned_abs() <= l.min(lp) && m.unsigned_abs() <= l.min(lp));
    let left = rot_expansion(lp, l0, m);
    let right = rot_expansion(l, l0, m);
    assert_eq!(left.odd, right.odd);
    let odd = left.odd;

    let half = crat_rat(ratio(1, 2));
    // plain argument y: (1+y)/2 and (1-y)/2
    let plus_y = PolyY { c: vec![XFrac::constant(half.clone()), XFrac::constant(half.clone())] };
    let minus_y = PolyY {
        c: vec![XFrac::constant(half.clone()), XFrac::constant(-half.clone())],
    };
    // moved argument (y-t)/(1-ty), with the (1-ty) denominators cleared:
    //   (1+w)/2 -> (1+y)(1-t)/2,   (1-w)/2 -> (1-y)(1+t)/2
    let plus_w = plus_y.scale(&XFrac::one_minus_tanh_pow(1));
    let minus_w = minus_y.scale(&XFrac::one_plus_tanh_pow(1));

    let p_left = rot_poly(&left, &plus_y, &minus_y);
    let p_right = rot_poly(&right, &plus_w, &minus_w);
    // conjugating the left factor: identity for even parity, sign flip for odd
    let conj_sign = if odd { -1 } else { 1 };

    let mut n_poly = p_left.mul(&p_right);
    // power of (1 - t y) cleared from the right factor; in the odd case the
    // paired square roots contribute (1-y^2) sech/(4 (1-ty)) with the
    // polynomial part only reaching (1-ty)^{l-1}, so the total stays l
    let depth = l as i64;
    let mut extra = XFrac::one();
    if odd {
        let one_minus_y2 = PolyY {
            c: vec![XFrac::one(), XFrac::zero(), XFrac::constant(cint(-1))],
        };
        n_poly = n_poly.mul(&one_minus_y2);
        extra = XFrac::cosh_pow(-1).scale(&crat_rat(ratio(1, 4)));
    }
    let signed = crat_rat(rat(left.sign * right.sign * conj_sign));

    // rebase on u = 1 - t y: y = (u - 1)/(-t)
    let e = n_poly.rebase(&XFrac::inv_tanh().neg());

    let rho_q = rho_q_poly(l, lp);
    let minus_i = crat(Rat::zero(), rat(-1));
    let mut total = LamExpr::zero();
    for (i, ei) in e.iter().enumerate() {
        if ei.is_zero() {
            continue;
        }
        let r = i as i64 - depth;
        // 1/(i rho + r) = -i/(rho - i r); the partial fraction must divide rho Q
        let mult = match rho_q.div_linear_root(&crat(Rat::zero(), rat(r))) {
            Some(q) => q.scale(&minus_i),
            None => {
                let reduced = ei.reduced();
                assert!(
                    reduced.is_zero(),
                    "uncancelled spectral pole at r = {r} for (l0={l0}, m={m}, l={l}, l'={lp})"
                );
                continue;
            }
        };
        let base = ei.mul(&XFrac::inv_tanh()).mul(&XFrac::cosh_pow(-1));
        let plus_part = base.mul(&XFrac::one_plus_tanh_pow(r));
        let minus_part = base.mul(&XFrac::one_minus_tanh_pow(r)).neg();
        let mut term = LamExpr::from_part(0, 1, plus_part);
        term.accumulate(0, -1, minus_part);
        total = total.add(&term.scale_poly(&mult));
    }
    let norm = rat(((2 * l + 1) * (2 * lp + 1)) as i64) / rat(4)
        * &left.radicand
        * &right.radicand;
    let s = SqrtRat::sqrt_of(norm);
    total = total.mul_xfrac(&extra).scale(&signed).scale_rat(&s.rational);
    (Scaled { radicand: s.radicand, expr: total }, rho_q)
}

/// Taylor coefficients (from lambda^0) of a phase-free LamExpr whose
/// rho-coefficients are constants; exact rational arithmetic throughout.
/// Individual lambda-power parts may have poles at lambda = 0 that cancel
/// in the sum; the cancellation is verified exactly.
pub fn taylor_of(expr: &LamExpr, n: usize) -> Vec<CRat> {
    let zero = || CRat::new(Rat::zero(), Rat::zero());
    let depth = expr
        .parts
        .values()
        .map(|f| f.m1 as usize)
        .max()
        .unwrap_or(0);
    // out_ext[k] is the coefficient of lambda^{k - depth}
    let mut out_ext = vec![zero(); n + depth];
    for (&(p, s), f) in &expr.parts {
        assert_eq!(s, 0, "taylor_of requires a phase-free expression");
        assert_eq!(f.p1, 0, "unexpected (1 + x^2) denominator");
        let m1 = f.m1 as usize;
        let series_len = n + depth + m1;
        // numerator Taylor
        let mut num = vec![zero(); series_len];
        for (k, cpoly) in f.num.c.iter().enumerate() {
            if cpoly.is_zero() {
                continue;
            }
            assert!(cpoly.degree().unwrap_or(0) == 0);
            let c = cpoly.coeff(0);
            let j = f.num.lo + k as i64;
            let mut pw = CRat::new(Rat::one(), Rat::zero());
            for (t, slot) in num.iter_mut().enumerate() {
                *slot += c.clone() * pw.clone()
                    / CRat::new(Rat::from_integer(factorial(t as u64)), Rat::zero());
                pw *= crat_rat(rat(-j));
            }
        }
        // divide by (1 - e^{-2 lambda})^{m1} = (2 lambda)^{m1} u(lambda)^{m1}
        // with u = sum (-2 lambda)^T/(T+1)!
        let mut u = vec![Rat::zero(); series_len];
        for (t, slot) in u.iter_mut().enumerate() {
            let sign = if t % 2 == 0 { Rat::one() } else { -Rat::one() };
            *slot = sign * Rat::from_integer(BigInt::from(2u32).pow(t as u32))
                / Rat::from_integer(factorial((t + 1) as u64));
        }
        let mut u_pow = vec![Rat::zero(); series_len];
        u_pow[0] = Rat::one();
        for _ in 0..m1 {
            u_pow = series_mul_rat(&u_pow, &u, series_len);
        }
        let u_inv = series_inv_rat(&u_pow, series_len);
        let quotient = {
            // num * u_inv, a Laurent series starting at lambda^{-m1}
            let mut q = vec![zero(); series_len];
            for (a, na) in num.iter().enumerate() {
                if na.is_zero() {
                    continue;
                }
                for (b, ub) in u_inv.iter().enumerate().take(series_len - a) {
                    q[a + b] += na.clone() * crat_rat(ub.clone());
                }
            }
            q
        };
        let two_pow = crat_rat(Rat::from_integer(BigInt::from(2u32).pow(f.m1)));
        for (t_num, v) in quotient.iter().enumerate() {
            // order = p + t_num - m1, stored at order + depth
            let slot = p as i64 + t_num as i64 - m1 as i64 + depth as i64;
            if (0..(n + depth) as i64).contains(&slot) {
                out_ext[slot as usize] += v.clone() / two_pow.clone();
            }
        }
    }
    for (k, v) in out_ext.iter().take(depth).enumerate() {
        assert!(
            v.is_zero(),
            "pole of order {} at lambda = 0 fails to cancel",
            depth - k
        );
    }
    out_ext[depth..].to_vec()
}

fn series_mul_rat(a: &[Rat], b: &[Rat], n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); n];
    for (i, ai) in a.iter().enumerate().take(n) {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn series_inv_rat(a: &[Rat], n: usize) -> Vec<Rat> {
    assert!(!a[0].is_zero());
    let mut out = vec![Rat::zero(); n];
    out[0] = a[0].recip();
    for k in 1..n {
        let mut acc = Rat::zero();
        for j in 1..=k {
            if j < a.len() {
                acc += &a[j] * &out[k - j];
            }
        }
        out[k] = -acc / &a[0];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::rat_to_f64;
    use num_complex::Complex64;

    #[test]
    fn f_g_blocks_vanish_for_small_k() {
        assert!(f_of_k(0).is_zero());
        assert!(f_of_k(1).is_zero());
        assert!(g_of_k(0).is_zero());
        assert!(g_of_k(1).is_zero());
    }

    #[test]
    fn exact_b_weight_one_closed_form() {
        // B_{1,0}/(i e) = sqrt(6) (sinh 2l - 2l)/(2 sinh^2 l)
        let b = exact_b(1);
        for lam in [0.3, 0.9, 1.7, 3.1] {
            let got = b.eval(lam, Complex64::new(0.0, 0.0));
            let expect =
                6.0f64.sqrt() * ((2.0 * lam).sinh() - 2.0 * lam) / (2.0 * lam.sinh().powi(2));
            assert!((got.re - expect).abs() < 1e-11 * expect.abs(), "lam={lam}");
            assert!(got.im.abs() < 1e-12);
        }
    }

    #[test]
    fn exact_b_matches_integral_route() {
        for l in 1..=5u32 {
            let b = exact_b(l);
            for lam in [0.4, 1.0, 2.2] {
                let got = b.eval(lam, Complex64::new(0.0, 0.0)).re;
                let mut f = |x: f64| {
                    Complex64::new(crate::reps::rep_a_element(1, 0, l, 0, x).unwrap(), 0.0)
                };
                let (v, _) = crate::quad::adaptive(&mut f, 0.0, lam, 1e-12).unwrap();
                let expect = (8.0f64 / 3.0).sqrt() * v.re;
                assert!(
                    (got - expect).abs() < 1e-9 * expect.abs().max(0.1),
                    "l={l} lam={lam}: {got} vs {expect}"
                );
            }
        }
    }

    #[test]
    fn exact_b_limit_at_infinity() {
        for l in 1..=6u32 {
            let b = exact_b(l);
            let got = b.eval(30.0, Complex64::new(0.0, 0.0)).re;
            let expect = 2.0 * ((2 * l + 1) as f64 / (l * (l + 1)) as f64).sqrt();
            assert!((got - expect).abs() < 1e-10, "l={l}: {got} vs {expect}");
        }
    }

    #[test]
    fn exact_a_matches_quadrature() {
        for (l, m, lp) in [
            (1u32, 0i32, 1u32),
            (1, 1, 1),
            (1, 0, 2),
            (2, 1, 2),
            (2, 0, 3),
            (3, 2, 3),
            (1, -1, 2),
        ] {
            let a = exact_a(l, m, lp);
            for lam in [0.5, 1.1, 2.0] {
                let got = a.eval(lam, Complex64::new(0.0, 0.0));
                let expect = crate::reps::rep_a_element(l, m, lp, m, lam).unwrap();
                assert!(
                    (got.re - expect).abs() < 1e-10 * expect.abs().max(0.01)
                        && got.im.abs() < 1e-12,
                    "l={l} m={m} lp={lp} lam={lam}: {} vs {expect}",
                    got.re
                );
            }
        }
    }

    #[test]
    fn exact_u_matches_quadrature() {
        for (l0, m, l, lp) in [
            (0i32, 0i32, 0u32, 0u32),
            (0, 0, 1, 1),
            (0, 1, 1, 1),
            (0, 0, 0, 2),
            (0, 0, 2, 1),
            (1, 0, 1, 1),
            (1, 1, 1, 1),
            (1, -1, 1, 2),
            (2, 0, 2, 2),
            (2, 2, 2, 3),
            (0, 2, 3, 2),
            (3, 1, 3, 3),
        ] {
            let (u, rho_q) = exact_u(l0, m, l, lp);
            for rho in [0.7, 1.6] {
                for lam in [0.5, 1.3] {
                    let rc = Complex64::new(rho, 0.0);
                    let got = u.eval(lam, rc) / rho_q.eval_c64(rc);
                    let expect = crate::reps::u_matrix_element_quadrature(
                        crate::reps::RepLabel::principal(l0, rho),
                        l,
                        m,
                        lp,
                        m,
                        lam,
                        1e-12,
                    )
                    .unwrap();
                    assert!(
                        (got - expect).norm() < 1e-9 * expect.norm().max(0.01),
                        "l0={l0} m={m} l={l} lp={lp} rho={rho} lam={lam}: {got} vs {expect}"
                    );
                }
            }
        }
    }

    #[test]
    fn exact_u_spherical_diagonal_is_sinc() {
        let (u, rho_q) = exact_u(0, 0, 0, 0);
        let rho = Complex64::new(1.0, 0.0);
        let got = u.eval(1.0, rho) / rho_q.eval_c64(rho);
        let expect = 1.0f64.sin() / 1.0f64.sinh();
        assert!((got.re - expect).abs() < 1e-13 && got.im.abs() < 1e-13);
    }

    #[test]
    fn fg_limit_identities_exact() {
        for l in 1..=8u32 {
            let p_l = legendre_coeffs(l);
            let p_lp1 = legendre_coeffs(l + 1);
            let p_lm1 = legendre_coeffs(l - 1);
            let w_lm1 = crate::special::w_coeffs(l);
            let w_l = crate::special::w_coeffs(l + 1);
            let w_lm2 = if l >= 1 { crate::special::w_coeffs(l - 1) } else { vec![] };
            let sgn = |k: u32| if k % 2 == 0 { Rat::one() } else { -Rat::one() };
            let f = |k: u32| fg_limits(k).0;
            let g = |k: u32| fg_limits(k).1;

            let mut s1 = Rat::zero();
            for k in 0..=l {
                s1 += &p_l[k as usize] * sgn(k) * f(k);
            }
            for k in 1..=(l + 2) {
                s1 -= &p_lp1[(k - 1) as usize]
                    * sgn(k)
                    * f(k)
                    * ratio((l + 1) as i64, (2 * l + 1) as i64);
            }
            for k in 1..=l {
                s1 -= &p_lm1[(k - 1) as usize] * sgn(k) * f(k) * ratio(l as i64, (2 * l + 1) as i64);
            }
            assert!(s1.is_zero(), "first limit identity fails at l={l}: {s1}");

            let rhs = ratio(4, (l * (l + 1)) as i64)
                * (rat(-1) - rat(if (l + 1) % 2 == 0 { 1 } else { -1 }));
            let mut s2 = Rat::zero();
            for k in 0..l {
                s2 -= &w_lm1[k as usize] * sgn(k) * f(k);
            }
            for k in 1..=(l + 1) {
                s2 += &w_l[(k - 1) as usize]
                    * sgn(k)
                    * f(k)
                    * ratio((l + 1) as i64, (2 * l + 1) as i64);
            }
            if l >= 2 {
                for k in 1..=(l - 1) {
                    s2 += &w_lm2[(k - 1) as usize]
                        * sgn(k)
                        * f(k)
                        * ratio(l as i64, (2 * l + 1) as i64);
                }
            }
            assert_eq!(s2, rhs, "second limit identity fails at l={l}");

            let mut s3 = Rat::zero();
            for k in 0..=l {
                s3 += &p_l[k as usize] * sgn(k) * g(k);
            }
            for k in 1..=(l + 2) {
                s3 -= &p_lp1[(k - 1) as usize]
                    * sgn(k)
                    * g(k)
                    * ratio((l + 1) as i64, (2 * l + 1) as i64);
            }
            for k in 1..=l {
                s3 -= &p_lm1[(k - 1) as usize] * sgn(k) * g(k) * ratio(l as i64, (2 * l + 1) as i64);
            }
            assert_eq!(s3, rhs, "third limit identity fails at l={l}");
        }
    }

    #[test]
    fn taylor_of_cocycle_component() {
        // leading Taylor order of B_{l,0} is lambda^l
        for l in 1..=4u32 {
            let b = exact_b(l);
            let tay = taylor_of(&b.expr, (l + 25) as usize);
            for (t, c) in tay.iter().enumerate().take(l as usize) {
                assert!(c.is_zero(), "l={l}: order {t} coefficient should vanish");
            }
            assert!(!tay[l as usize].is_zero());
            // compare at a rapidity where the direct f64 evaluation is still
            // well conditioned and the truncated series is converged
            // (convergence radius pi, direct cancellation ~ lambda^{2l+1})
            let lam = 0.5;
            let direct = b.eval(lam, Complex64::new(0.0, 0.0)).re;
            let mut acc = 0.0;
            for (t, c) in tay.iter().enumerate() {
                acc += rat_to_f64(&c.re) * lam.powi(t as i32);
            }
            let acc = acc * rat_to_f64(&b.radicand).sqrt();
            assert!(
                (acc - direct).abs() < 1e-9 * direct.abs().max(1e-6),
                "l={l}: {acc} vs {direct}"
            );
        }
    }
}
