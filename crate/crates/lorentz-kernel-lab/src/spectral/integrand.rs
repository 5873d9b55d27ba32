//! Exponential-polynomial integrands over the common denominator
//! (1 - e^{-2 lambda})^{q+1} and their assembly from catalogued closed
//! forms, ready for the partial-fraction series engine.

use super::forms;
use super::poly::PolyC;
use super::xfield::{LamExpr, Scaled, XFrac};
use crate::error::{unsupported, Result};
use crate::ratmath::{cint, crat, rat, ratio, CRat, Rat, SqrtRat};
use num_complex::Complex64;
use num_traits::{One, Zero};

/// One term coef(rho) z^{zpow} lambda^p e^{-j lambda} e^{i s rho lambda}
/// of the integrand numerator.
#[derive(Debug, Clone)]
pub struct Term {
    pub p: u8,
    pub j: i64,
    pub s: i8,
    pub zpow: u8,
    pub coef: PolyC,
}

/// Integrand numerator over (1 - e^{-2 lambda})^{q+1}, q >= -1.
#[derive(Debug, Clone)]
pub struct ExpPolyIntegrand {
    pub q: i64,
    pub terms: Vec<Term>,
}

impl ExpPolyIntegrand {
    /// Exponent of the leading zero of the numerator at lambda = 0, found
    /// in exact arithmetic as an identity in (rho, z). Analyticity of the
    /// integrand requires at least q + 1.
    pub fn vanishing_order(&self) -> u32 {
        let max_z = self.terms.iter().map(|t| t.zpow).max().unwrap_or(0);
        for t_order in 0u32..=(self.q.max(0) as u32 + 40) {
            let mut per_z: Vec<PolyC> = vec![PolyC::zero(); max_z as usize + 1];
            for term in &self.terms {
                if term.p as u32 > t_order {
                    continue;
                }
                let k = t_order - term.p as u32;
                // (-j + i s rho)^k / k!
                let lin = PolyC {
                    c: vec![cint(-term.j), crat(Rat::zero(), rat(term.s as i64))],
                };
                let mut pw = PolyC::one();
                for _ in 0..k {
                    pw = pw.mul(&lin);
                }
                let fact = Rat::from_integer(crate::ratmath::factorial(k as u64));
                let contrib = term.coef.mul(&pw).scale(&CRat::new(fact.recip(), Rat::zero()));
                per_z[term.zpow as usize] = per_z[term.zpow as usize].add(&contrib);
            }
            if per_z.iter().any(|p| !p.is_zero()) {
                return t_order;
            }
        }
        self.q.max(0) as u32 + 41
    }

    /// Check the parity rule: all exponent shifts j share the parity of
    /// l0 - 1.
    pub fn parity_matches(&self, l0: i32) -> bool {
        let want = (l0 as i64 - 1).rem_euclid(2);
        self.terms.iter().all(|t| t.j.rem_euclid(2) == want)
    }

    pub fn min_j(&self) -> i64 {
        self.terms.iter().map(|t| t.j).min().unwrap_or(0)
    }

    /// Numeric evaluation of the integrand (without exp(-z lambda coth)).
    /// Near lambda = 0 the numerator cancels to order `vanish`, so the
    /// plain form loses all digits there; the Taylor route sums the
    /// surviving orders instead.
    pub fn eval(&self, lambda: f64, rho: Complex64, z: Complex64, vanish: u32) -> Complex64 {
        let jmax = self.terms.iter().map(|t| t.j.unsigned_abs()).max().unwrap_or(0) as f64;
        if lambda * (jmax + rho.norm()) < 5.0 && lambda < 0.5 {
            return self.eval_taylor(lambda, rho, z, vanish);
        }
        let x = (-lambda).exp();
        let den = (1.0 - x * x).powi(self.q as i32 + 1);
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            let phase = (Complex64::new(0.0, t.s as f64) * rho * lambda).exp();
            acc += t.coef.eval_c64(rho)
                * z.powu(t.zpow as u32)
                * lambda.powi(t.p as i32)
                * x.powi(t.j as i32)
                * phase;
        }
        acc / den
    }

    fn eval_taylor(&self, lambda: f64, rho: Complex64, z: Complex64, vanish: u32) -> Complex64 {
        // numerator = sum_T c_T lambda^T with
        //   c_T = sum_terms coef(rho) z^w (-j + i s rho)^{T-p} / (T-p)!
        // and c_T = 0 exactly for T < vanish.
        let terms: Vec<(Complex64, Complex64, u8)> = self
            .terms
            .iter()
            .map(|t| {
                (
                    t.coef.eval_c64(rho) * z.powu(t.zpow as u32),
                    Complex64::new(-t.j as f64, 0.0) + Complex64::new(0.0, t.s as f64) * rho,
                    t.p,
                )
            })
            .collect();
        let t_max = vanish as usize + 46;
        let mut c_orders = vec![Complex64::new(0.0, 0.0); t_max + 1];
        for (coef, lin, p) in &terms {
            let mut pw = *coef;
            for k in 0..=(t_max - *p as usize) {
                c_orders[*p as usize + k] += pw;
                pw = pw * lin / (k + 1) as f64;
            }
        }
        let mut num = Complex64::new(0.0, 0.0);
        let mut lam_pow = lambda.powi(vanish as i32);
        for c in c_orders.iter().take(t_max + 1).skip(vanish as usize) {
            num += c * lam_pow;
            lam_pow *= lambda;
        }
        let den = (-(-2.0 * lambda).exp_m1()).powi(self.q as i32 + 1);
        num / den
    }
}

/// Convert lambda-expressions (tagged by their power of z) into the
/// numerator form over (1 - x^2)^{q+1}; q_target = None picks the minimal q.
pub fn expoly_from_parts(parts: &[(LamExpr, u8)], q_target: Option<i64>) -> ExpPolyIntegrand {
    let min_q = parts
        .iter()
        .flat_map(|(e, _)| e.parts.values())
        .map(|f| f.m1 as i64 - 1)
        .max()
        .unwrap_or(-1);
    let q = q_target.unwrap_or(min_q);
    assert!(q >= min_q, "target denominator power below the minimal one");
    let mut terms = Vec::new();
    for (expr, zpow) in parts {
        for (&(p, s), f) in &expr.parts {
            let f = f.reduced();
            assert_eq!(f.p1, 0, "a (1+x^2) denominator survived assembly");
            let clear = (q + 1 - f.m1 as i64) as u32;
            let num = f.num.mul(&super::xfield::XPoly::circle_pow(true, clear));
            for (k, coef) in num.c.iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                terms.push(Term {
                    p,
                    j: num.lo + k as i64,
                    s,
                    zpow: *zpow,
                    coef: coef.clone(),
                });
            }
        }
    }
    ExpPolyIntegrand { q, terms }
}

/// One bucket of a fraction series: an integrand together with a rational
/// multiplier in rho applied to the whole bucket.
#[derive(Debug, Clone)]
pub struct Bucket {
    pub poly: ExpPolyIntegrand,
    pub mult_num: PolyC,
    pub mult_den: PolyC,
    /// cached exact vanishing order of the numerator
    pub vanish: u32,
}

impl Bucket {
    pub fn new(poly: ExpPolyIntegrand, mult_num: PolyC, mult_den: PolyC) -> Bucket {
        let vanish = poly.vanishing_order();
        assert!(
            vanish as i64 >= poly.q + 1,
            "integrand not analytic: numerator vanishes to order {} < q+1 = {}",
            vanish,
            poly.q + 1
        );
        Bucket { poly, mult_num, mult_den, vanish }
    }
}

/// A transform of the boost-line weight exp(-z lambda coth lambda):
/// value(rho, z) = scale * sqrt(radicand)
///                 * sum_buckets mult(rho) * int_0^inf g e^{-z l coth l} dl,
/// each integral represented by its double series of simple fractions.
#[derive(Debug, Clone)]
pub struct FractionSeries {
    pub name: String,
    pub scale: CRat,
    pub radicand: Rat,
    pub buckets: Vec<Bucket>,
}

impl FractionSeries {
    pub fn scale_c64(&self) -> Complex64 {
        crate::ratmath::crat_to_c64(&self.scale)
            * crate::ratmath::rat_to_f64(&self.radicand).sqrt()
    }

    /// Numeric integrand value sum_buckets mult * g (for quadrature oracles).
    pub fn integrand_eval(&self, lambda: f64, rho: Complex64, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for b in &self.buckets {
            let mult = b.mult_num.eval_c64(rho) / b.mult_den.eval_c64(rho);
            acc += mult * b.poly.eval(lambda, rho, z, b.vanish);
        }
        acc * self.scale_c64()
    }
}

fn scaled_mul(a: &Scaled<LamExpr>, b: &Scaled<LamExpr>) -> (Rat, LamExpr) {
    let s = SqrtRat::sqrt_of(&a.radicand * &b.radicand);
    (s.radicand, a.expr.mul(&b.expr).scale_rat(&s.rational))
}

/// Fold a list of (radicand, expr) onto a common radicand; the ratios must
/// be perfect squares, which the assembled kernels guarantee.
fn fold_radicands(pieces: Vec<(Rat, LamExpr)>) -> (Rat, LamExpr) {
    let mut base: Option<Rat> = None;
    let mut acc = LamExpr::zero();
    for (radicand, expr) in pieces {
        if expr.is_zero() {
            continue;
        }
        match &base {
            None => {
                base = Some(radicand);
                acc = expr;
            }
            Some(r) => {
                let s = SqrtRat::sqrt_of(&radicand / r);
                assert!(
                    s.is_rational(),
                    "incompatible square-root prefactors {radicand} vs {r}"
                );
                acc = acc.add(&expr.scale_rat(&s.rational));
            }
        }
    }
    (base.unwrap_or_else(Rat::one), acc)
}

/// Transform integrand of the one-photon kernels:
///
///   [ sum_n A_{l,n; l',n} U^{(l0)}_{l,n; l',n}
///     + (z/4)(-1)^l Bt_{l'} Bt_l U^{(l0)}_{l,0; l',0} ] sinh^2 lambda,
///
/// divided by rho Q(rho); the A/B/U factors are the exact closed forms.
/// For l = l' this is the diagonal transform of the kernel with one
/// creation operator; for l < l' the projection-function integrand.
pub fn assemble_one_photon(l: u32, lp: u32, l0: i32) -> Result<FractionSeries> {
    if l0.unsigned_abs() > l.min(lp) || l.min(lp) < 1 {
        return Err(unsupported(format!(
            "one-photon transform needs 1 <= |l0| <= min(l,l') ; got l0={l0}, l={l}, l'={lp}"
        )));
    }
    let sinh2 = XFrac::sinh_pow(2);
    let mut pieces0 = Vec::new();
    let mut rho_q = None;
    for n in -(l.min(lp) as i32)..=(l.min(lp) as i32) {
        let a = forms::exact_a(l, n, lp);
        let (u, rq) = forms::exact_u(l0, n, l, lp);
        rho_q.get_or_insert(rq);
        let (radicand, expr) = scaled_mul(&a, &u);
        pieces0.push((radicand, expr.mul_xfrac(&sinh2)));
    }
    let (rad0, expr0) = fold_radicands(pieces0);

    let bl = forms::exact_b(l);
    let blp = forms::exact_b(lp);
    let (u0, _) = forms::exact_u(l0, 0, l, lp);
    let (rad_b, bb) = scaled_mul(&bl, &blp);
    let s = SqrtRat::sqrt_of(&rad_b * &u0.radicand);
    let sign = ratio(if l % 2 == 0 { 1 } else { -1 }, 4);
    let expr1 = bb
        .mul(&u0.expr)
        .mul_xfrac(&sinh2)
        .scale_rat(&(s.rational * sign));
    let rad1 = s.radicand;

    let (radicand, expr0, expr1) = {
        let sq = SqrtRat::sqrt_of(&rad1 / &rad0);
        if sq.is_rational() {
            (rad0.clone(), expr0, expr1.scale_rat(&sq.rational))
        } else {
            let sq2 = SqrtRat::sqrt_of(&rad0 / &rad1);
            assert!(sq2.is_rational(), "incompatible radicands in kernel assembly");
            (rad1.clone(), expr0.scale_rat(&sq2.rational), expr1)
        }
    };
    let poly = expoly_from_parts(&[(expr0, 0), (expr1, 1)], Some(2 * (l + lp) as i64));
    let bucket = Bucket::new(poly, PolyC::one(), rho_q.unwrap());
    Ok(FractionSeries {
        name: format!("one-photon transform l={l} l'={lp} l0={l0}"),
        scale: cint(1),
        radicand,
        buckets: vec![bucket],
    })
}

/// Transform integrand connecting the vacuum-cloud state and a one-photon
/// state: -i Bt_l(lambda) U^{(0, i rho)}_{0,0; l,0}(lambda) sinh^2 lambda,
/// divided by rho Q(rho). The -i comes from conj(B) = -i e Bt.
pub fn assemble_cloud_overlap(l: u32) -> Result<FractionSeries> {
    if l < 1 {
        return Err(unsupported("the overlap needs l >= 1"));
    }
    let b = forms::exact_b(l);
    let (u, rho_q) = forms::exact_u(0, 0, 0, l);
    let (radicand, expr) = scaled_mul(&b, &u);
    let expr = expr.mul_xfrac(&XFrac::sinh_pow(2));
    let poly = expoly_from_parts(&[(expr, 0)], Some(2 * l as i64 - 1));
    let bucket = Bucket::new(poly, PolyC::one(), rho_q);
    Ok(FractionSeries {
        name: format!("cloud overlap l={l}"),
        scale: crat(Rat::zero(), rat(-1)),
        radicand,
        buckets: vec![bucket],
    })
}

/// Transform integrand of the spherically symmetric kernel:
/// sinh(lambda) sin(rho lambda), divided by rho.
pub fn assemble_spherical() -> FractionSeries {
    // sin = (e^{i rho lambda} - e^{-i rho lambda})/(2i)
    let half_over_i = crat(Rat::zero(), ratio(-1, 2));
    let mut expr = LamExpr::from_part(0, 1, XFrac::sinh_pow(1).scale(&half_over_i));
    expr.accumulate(0, -1, XFrac::sinh_pow(1).scale(&-half_over_i));
    let poly = expoly_from_parts(&[(expr, 0)], None);
    FractionSeries {
        name: "spherical kernel transform".into(),
        scale: cint(1),
        radicand: Rat::one(),
        buckets: vec![Bucket::new(poly, PolyC::one(), PolyC::rho())],
    }
}

/// int_0^inf e^{-z lambda coth lambda} d lambda as a fraction series.
pub fn assemble_f0() -> FractionSeries {
    let poly = expoly_from_parts(&[(LamExpr::from_xfrac(XFrac::one()), 0)], None);
    FractionSeries {
        name: "plain weight integral".into(),
        scale: cint(1),
        radicand: Rat::one(),
        buckets: vec![Bucket::new(poly, PolyC::one(), PolyC::one())],
    }
}

fn sin_expr() -> LamExpr {
    let c = crat(Rat::zero(), ratio(-1, 2));
    let mut e = LamExpr::from_part(0, 1, XFrac::constant(c.clone()));
    e.accumulate(0, -1, XFrac::constant(-c));
    e
}

fn cos_expr() -> LamExpr {
    let half = crat(ratio(1, 2), Rat::zero());
    let mut e = LamExpr::from_part(0, 1, XFrac::constant(half.clone()));
    e.accumulate(0, -1, XFrac::constant(half));
    e
}

/// (sinh 2 lambda - 2 lambda) as a LamExpr.
fn sinh2l_minus_2l() -> LamExpr {
    let mut e = LamExpr::from_xfrac(XFrac::sinh_pow(1).mul(&XFrac::cosh_pow(1)).scale(&cint(2)));
    e.accumulate(1, 0, XFrac::constant(cint(-2)));
    e
}

/// (lambda coth lambda - 1) as a LamExpr.
fn lcoth_minus_one() -> LamExpr {
    let mut e = LamExpr::from_part(1, 0, XFrac::cosh_pow(1).mul(&XFrac::sinh_pow(-1)));
    e.accumulate(0, 0, XFrac::constant(cint(-1)));
    e
}

/// The three weight-one transform pieces f1, f2, f3: each value is
/// sum of buckets, the oscillatory sine parts carrying a 1/rho multiplier.
pub fn assemble_f(which: u8) -> FractionSeries {
    let rho2p1 = PolyC { c: vec![cint(1), cint(0), cint(1)] };
    let (name, buckets) = match which {
        1 => {
            // ((sinh 2l - 2l)/sinh)(cosh sin(rho l)/(rho sinh) - cos(rho l))/sinh^2
            let shell = sinh2l_minus_2l().mul_xfrac(&XFrac::sinh_pow(-3));
            let osc = shell
                .mul_xfrac(&XFrac::cosh_pow(1).mul(&XFrac::sinh_pow(-1)))
                .mul(&sin_expr());
            let plain = shell.mul(&cos_expr()).neg();
            (
                "weight-one transform piece 1",
                vec![
                    Bucket::new(expoly_from_parts(&[(osc, 0)], Some(3)), PolyC::one(), PolyC::rho()),
                    Bucket::new(expoly_from_parts(&[(plain, 0)], Some(3)), PolyC::one(), PolyC::one()),
                ],
            )
        }
        2 => {
            // [(rho^2+1) sinh sin + 2 rho cosh cos - 2 cosh coth sin]
            //   (lambda coth lambda - 1) / (rho sinh^2)
            let weight = lcoth_minus_one().mul_xfrac(&XFrac::sinh_pow(-2));
            let part_a = weight
                .mul_xfrac(&XFrac::sinh_pow(1))
                .mul(&sin_expr())
                .scale_poly(&rho2p1);
            let part_b = weight
                .mul_xfrac(&XFrac::cosh_pow(1))
                .mul(&cos_expr())
                .scale_poly(&PolyC { c: vec![cint(0), cint(2)] });
            let part_c = weight
                .mul_xfrac(&XFrac::cosh_pow(2).mul(&XFrac::sinh_pow(-1)))
                .mul(&sin_expr())
                .scale(&cint(-2));
            (
                "weight-one transform piece 2",
                vec![Bucket::new(
                    expoly_from_parts(&[(part_a.add(&part_b).add(&part_c), 0)], None),
                    PolyC::one(),
                    PolyC::rho(),
                )],
            )
        }
        3 => {
            // same angular bracket against (sinh 2l - 2l)^2 / (rho sinh^4)
            let shell = sinh2l_minus_2l().mul(&sinh2l_minus_2l());
            let weight = shell.mul_xfrac(&XFrac::sinh_pow(-4));
            let part_a = weight
                .mul_xfrac(&XFrac::sinh_pow(1))
                .mul(&sin_expr())
                .scale_poly(&rho2p1);
            let part_b = weight
                .mul_xfrac(&XFrac::cosh_pow(1))
                .mul(&cos_expr())
                .scale_poly(&PolyC { c: vec![cint(0), cint(2)] });
            let part_c = weight
                .mul_xfrac(&XFrac::cosh_pow(2).mul(&XFrac::sinh_pow(-1)))
                .mul(&sin_expr())
                .scale(&cint(-2));
            (
                "weight-one transform piece 3",
                vec![Bucket::new(
                    expoly_from_parts(&[(part_a.add(&part_b).add(&part_c), 0)], None),
                    PolyC::one(),
                    PolyC::rho(),
                )],
            )
        }
        _ => panic!("pieces are numbered 1..=3"),
    };
    FractionSeries {
        name: name.into(),
        scale: cint(1),
        radicand: Rat::one(),
        buckets,
    }
}
