//! Exact algebra of the boost-line closed forms in the variable x = e^{-lambda}.
//!
//! Everything the closed forms produce lives in the ring of Laurent
//! polynomials in x with rho-polynomial coefficients, divided by powers of
//! (1 - x^2) and (1 + x^2), optionally multiplied by lambda and by the
//! oscillating phases e^{+- i rho lambda}. `XFrac` and `LamExpr` implement
//! that algebra exactly.

use super::poly::PolyC;
use crate::ratmath::{cint, ratio, CRat, Rat};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Laurent polynomial in x: sum_k c[k] x^{lo + k}.
#[derive(Debug, Clone, PartialEq)]
pub struct XPoly {
    pub lo: i64,
    pub c: Vec<PolyC>,
}

impl XPoly {
    pub fn zero() -> XPoly {
        XPoly { lo: 0, c: Vec::new() }
    }

    pub fn constant(p: PolyC) -> XPoly {
        XPoly::monomial(0, p)
    }

    pub fn one() -> XPoly {
        XPoly::constant(PolyC::one())
    }

    pub fn monomial(pow: i64, p: PolyC) -> XPoly {
        if p.is_zero() {
            return XPoly::zero();
        }
        XPoly { lo: pow, c: vec![p] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.c.len() as i64 - 1
    }

    pub fn coeff(&self, pow: i64) -> PolyC {
        if pow < self.lo || pow > self.hi() {
            PolyC::zero()
        } else {
            self.c[(pow - self.lo) as usize].clone()
        }
    }

    fn normalize(mut self) -> XPoly {
        while self.c.last().map(|p| p.is_zero()).unwrap_or(false) {
            self.c.pop();
        }
        let lead = self.c.iter().take_while(|p| p.is_zero()).count();
        if lead > 0 {
            self.c.drain(0..lead);
            self.lo += lead as i64;
        }
        if self.c.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn add(&self, rhs: &XPoly) -> XPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(rhs.lo);
        let hi = self.hi().max(rhs.hi());
        let mut c = Vec::with_capacity((hi - lo + 1) as usize);
        for pow in lo..=hi {
            c.push(self.coeff(pow).add(&rhs.coeff(pow)));
        }
        XPoly { lo, c }.normalize()
    }

    pub fn neg(&self) -> XPoly {
        XPoly { lo: self.lo, c: self.c.iter().map(|p| p.neg()).collect() }
    }

    pub fn mul(&self, rhs: &XPoly) -> XPoly {
        if self.is_zero() || rhs.is_zero() {
            return XPoly::zero();
        }
        let mut c = vec![PolyC::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        XPoly { lo: self.lo + rhs.lo, c }.normalize()
    }

    pub fn scale(&self, v: &CRat) -> XPoly {
        XPoly { lo: self.lo, c: self.c.iter().map(|p| p.scale(v)).collect() }.normalize()
    }

    pub fn scale_poly(&self, v: &PolyC) -> XPoly {
        XPoly { lo: self.lo, c: self.c.iter().map(|p| p.mul(v)).collect() }.normalize()
    }

    pub fn shift(&self, k: i64) -> XPoly {
        if self.is_zero() {
            return XPoly::zero();
        }
        XPoly { lo: self.lo + k, c: self.c.clone() }
    }

    /// (1 - x^2)^k or (1 + x^2)^k as a Laurent polynomial, k >= 0.
    pub fn circle_pow(sign_minus: bool, k: u32) -> XPoly {
        let base = if sign_minus {
            XPoly { lo: 0, c: vec![PolyC::one(), PolyC::zero(), PolyC::one().neg()] }
        } else {
            XPoly { lo: 0, c: vec![PolyC::one(), PolyC::zero(), PolyC::one()] }
        };
        let mut acc = XPoly::one();
        for _ in 0..k {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Exact division by (1 - x^2) or (1 + x^2); None with nonzero remainder.
    pub fn try_div_circle(&self, sign_minus: bool) -> Option<XPoly> {
        if self.is_zero() {
            return Some(XPoly::zero());
        }
        // Peel the top power against the divisor 1 + s x^2, s = -+1.
        let s = if sign_minus { -1i64 } else { 1i64 };
        let mut work = self.clone();
        let mut quotient = XPoly::zero();
        while !work.is_zero() && work.hi() >= work.lo + 2 {
            let top = work.hi();
            let lead = work.coeff(top);
            let qterm = XPoly::monomial(top - 2, if s == 1 { lead.clone() } else { lead.neg() });
            let sub = qterm.add(&qterm.shift(2).scale(&cint(s)));
            work = work.add(&sub.neg());
            quotient = quotient.add(&qterm);
        }
        if work.is_zero() {
            Some(quotient)
        } else {
            None
        }
    }

    pub fn eval(&self, x: Complex64, rho: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, p) in self.c.iter().enumerate() {
            acc += p.eval_c64(rho) * x.powi(self.lo as i32 + k as i32);
        }
        acc
    }

    /// Evaluate each coefficient polynomial at a fixed exact rho.
    pub fn eval_rho(&self, rho: &CRat) -> Vec<(i64, CRat)> {
        self.c
            .iter()
            .enumerate()
            .map(|(k, p)| (self.lo + k as i64, p.eval(rho)))
            .collect()
    }
}

/// num / ((1 - x^2)^m1 (1 + x^2)^p1).
#[derive(Debug, Clone, PartialEq)]
pub struct XFrac {
    pub num: XPoly,
    pub m1: u32,
    pub p1: u32,
}

impl XFrac {
    pub fn zero() -> XFrac {
        XFrac { num: XPoly::zero(), m1: 0, p1: 0 }
    }

    pub fn one() -> XFrac {
        XFrac { num: XPoly::one(), m1: 0, p1: 0 }
    }

    pub fn from_num(num: XPoly) -> XFrac {
        XFrac { num, m1: 0, p1: 0 }
    }

    pub fn constant(c: CRat) -> XFrac {
        XFrac::from_num(XPoly::constant(PolyC::constant(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// sinh^k(lambda) for any integer k: ((1-x^2)/(2x))^k.
    pub fn sinh_pow(k: i64) -> XFrac {
        if k >= 0 {
            let inv_two_pow = Rat::new(1.into(), num_bigint::BigInt::from(2u32).pow(k as u32));
            XFrac {
                num: XPoly::circle_pow(true, k as u32)
                    .shift(-k)
                    .scale(&CRat::new(inv_two_pow, Rat::from_integer(0.into()))),
                m1: 0,
                p1: 0,
            }
        } else {
            let k = (-k) as u32;
            let two_pow = Rat::from_integer(num_bigint::BigInt::from(2u32).pow(k));
            XFrac {
                num: XPoly::monomial(k as i64, PolyC::constant(CRat::new(two_pow, Rat::from_integer(0.into())))),
                m1: k,
                p1: 0,
            }
        }
    }

    /// cosh^k(lambda) for any integer k: ((1+x^2)/(2x))^k.
    pub fn cosh_pow(k: i64) -> XFrac {
        if k >= 0 {
            let two_pow = Rat::from_integer(num_bigint::BigInt::from(2u32).pow(k as u32));
            XFrac {
                num: XPoly::circle_pow(false, k as u32)
                    .shift(-k)
                    .scale(&CRat::new(Rat::new(1.into(), two_pow.to_integer()), Rat::from_integer(0.into()))),
                m1: 0,
                p1: 0,
            }
        } else {
            let k = (-k) as u32;
            let two_pow = Rat::from_integer(num_bigint::BigInt::from(2u32).pow(k));
            XFrac {
                num: XPoly::monomial(k as i64, PolyC::constant(CRat::new(two_pow, Rat::from_integer(0.into())))),
                m1: 0,
                p1: k,
            }
        }
    }

    /// (1 + t)^k with t = tanh(lambda): (2/(1+x^2))^k.
    pub fn one_plus_tanh_pow(k: i64) -> XFrac {
        let two = cint(2);
        if k >= 0 {
            let mut num = XPoly::one();
            for _ in 0..k {
                num = num.scale(&two);
            }
            XFrac { num, m1: 0, p1: k as u32 }
        } else {
            let k = (-k) as u32;
            let half = CRat::new(ratio(1, 2), Rat::from_integer(0.into()));
            let mut num = XPoly::circle_pow(false, k);
            for _ in 0..k {
                num = num.scale(&half);
            }
            XFrac { num, m1: 0, p1: 0 }
        }
    }

    /// (1 - t)^k with t = tanh(lambda): (2x^2/(1+x^2))^k.
    pub fn one_minus_tanh_pow(k: i64) -> XFrac {
        let two = cint(2);
        if k >= 0 {
            let mut num = XPoly::monomial(2 * k, PolyC::one());
            for _ in 0..k {
                num = num.scale(&two);
            }
            XFrac { num, m1: 0, p1: k as u32 }
        } else {
            let k = (-k) as u32;
            let half = CRat::new(ratio(1, 2), Rat::from_integer(0.into()));
            let mut num = XPoly::circle_pow(false, k).shift(-2 * k as i64);
            for _ in 0..k {
                num = num.scale(&half);
            }
            XFrac { num, m1: 0, p1: 0 }
        }
    }

    /// 1/t = (1+x^2)/(1-x^2).
    pub fn inv_tanh() -> XFrac {
        XFrac { num: XPoly::circle_pow(false, 1), m1: 1, p1: 0 }
    }

    pub fn tanh() -> XFrac {
        XFrac { num: XPoly::circle_pow(true, 1), m1: 0, p1: 1 }
    }

    pub fn add(&self, rhs: &XFrac) -> XFrac {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let m1 = self.m1.max(rhs.m1);
        let p1 = self.p1.max(rhs.p1);
        let a = self
            .num
            .mul(&XPoly::circle_pow(true, m1 - self.m1))
            .mul(&XPoly::circle_pow(false, p1 - self.p1));
        let b = rhs
            .num
            .mul(&XPoly::circle_pow(true, m1 - rhs.m1))
            .mul(&XPoly::circle_pow(false, p1 - rhs.p1));
        XFrac { num: a.add(&b), m1, p1 }.reduced()
    }

    pub fn neg(&self) -> XFrac {
        XFrac { num: self.num.neg(), m1: self.m1, p1: self.p1 }
    }

    pub fn mul(&self, rhs: &XFrac) -> XFrac {
        XFrac {
            num: self.num.mul(&rhs.num),
            m1: self.m1 + rhs.m1,
            p1: self.p1 + rhs.p1,
        }
        .reduced()
    }

    pub fn scale(&self, v: &CRat) -> XFrac {
        XFrac { num: self.num.scale(v), m1: self.m1, p1: self.p1 }
    }

    pub fn scale_rat(&self, v: &Rat) -> XFrac {
        self.scale(&CRat::new(v.clone(), Rat::from_integer(0.into())))
    }

    pub fn scale_poly(&self, v: &PolyC) -> XFrac {
        XFrac { num: self.num.scale_poly(v), m1: self.m1, p1: self.p1 }
    }

    /// Cancel circle factors shared by numerator and denominator.
    pub fn reduced(&self) -> XFrac {
        let mut out = self.clone();
        while out.m1 > 0 {
            match out.num.try_div_circle(true) {
                Some(q) => {
                    out.num = q;
                    out.m1 -= 1;
                }
                None => break,
            }
        }
        while out.p1 > 0 {
            match out.num.try_div_circle(false) {
                Some(q) => {
                    out.num = q;
                    out.p1 -= 1;
                }
                None => break,
            }
        }
        out
    }

    pub fn eval(&self, lambda: f64, rho: Complex64) -> Complex64 {
        let x = (-lambda).exp();
        let xc = Complex64::new(x, 0.0);
        let den = (1.0 - x * x).powi(self.m1 as i32) * (1.0 + x * x).powi(self.p1 as i32);
        self.num.eval(xc, rho) / den
    }
}

/// Sum of terms lambda^p e^{i s rho lambda} XFrac with p a small power and
/// s in {-1, 0, +1}.
#[derive(Debug, Clone, PartialEq)]
pub struct LamExpr {
    pub parts: BTreeMap<(u8, i8), XFrac>,
}

impl LamExpr {
    pub fn zero() -> LamExpr {
        LamExpr { parts: BTreeMap::new() }
    }

    pub fn from_part(p: u8, s: i8, f: XFrac) -> LamExpr {
        let mut e = LamExpr::zero();
        e.accumulate(p, s, f);
        e
    }

    pub fn from_xfrac(f: XFrac) -> LamExpr {
        LamExpr::from_part(0, 0, f)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.values().all(|f| f.is_zero())
    }

    pub fn accumulate(&mut self, p: u8, s: i8, f: XFrac) {
        if f.is_zero() {
            return;
        }
        let slot = self.parts.entry((p, s)).or_insert_with(XFrac::zero);
        *slot = slot.add(&f);
        if slot.is_zero() {
            self.parts.remove(&(p, s));
        }
    }

    pub fn add(&self, rhs: &LamExpr) -> LamExpr {
        let mut out = self.clone();
        for (&(p, s), f) in &rhs.parts {
            out.accumulate(p, s, f.clone());
        }
        out
    }

    pub fn neg(&self) -> LamExpr {
        LamExpr { parts: self.parts.iter().map(|(&k, f)| (k, f.neg())).collect() }
    }

    pub fn mul(&self, rhs: &LamExpr) -> LamExpr {
        let mut out = LamExpr::zero();
        for (&(p1, s1), f1) in &self.parts {
            for (&(p2, s2), f2) in &rhs.parts {
                let s = s1 + s2;
                assert!(
                    s.abs() <= 1,
                    "phase bookkeeping allows at most one oscillating factor"
                );
                out.accumulate(p1 + p2, s, f1.mul(f2));
            }
        }
        out
    }

    pub fn mul_xfrac(&self, f: &XFrac) -> LamExpr {
        LamExpr { parts: self.parts.iter().map(|(&k, g)| (k, g.mul(f))).collect() }
    }

    pub fn mul_lambda(&self) -> LamExpr {
        LamExpr { parts: self.parts.iter().map(|(&(p, s), f)| ((p + 1, s), f.clone())).collect() }
    }

    pub fn scale(&self, v: &CRat) -> LamExpr {
        LamExpr { parts: self.parts.iter().map(|(&k, f)| (k, f.scale(v))).collect() }
    }

    pub fn scale_rat(&self, v: &Rat) -> LamExpr {
        self.scale(&CRat::new(v.clone(), Rat::from_integer(0.into())))
    }

    pub fn scale_poly(&self, v: &PolyC) -> LamExpr {
        LamExpr { parts: self.parts.iter().map(|(&k, f)| (k, f.scale_poly(v))).collect() }
    }

    pub fn eval(&self, lambda: f64, rho: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(p, s), f) in &self.parts {
            let phase = (Complex64::new(0.0, s as f64) * rho * lambda).exp();
            acc += f.eval(lambda, rho) * lambda.powi(p as i32) * phase;
        }
        acc
    }
}

/// A value carrying an overall positive square-root prefactor:
/// total = sqrt(radicand) * expr.
#[derive(Debug, Clone, PartialEq)]
pub struct Scaled<T> {
    pub radicand: Rat,
    pub expr: T,
}

impl Scaled<LamExpr> {
    pub fn eval(&self, lambda: f64, rho: Complex64) -> Complex64 {
        self.expr.eval(lambda, rho) * crate::ratmath::rat_to_f64(&self.radicand).sqrt()
    }

    /// Add terms whose radicands differ by a perfect square.
    pub fn add(&self, rhs: &Scaled<LamExpr>) -> Scaled<LamExpr> {
        use crate::ratmath::SqrtRat;
        if self.expr.is_zero() {
            return rhs.clone();
        }
        if rhs.expr.is_zero() {
            return self.clone();
        }
        let ratio = &rhs.radicand / &self.radicand;
        let s = SqrtRat::sqrt_of(ratio);
        assert!(
            s.is_rational(),
            "cannot combine square-root prefactors {:?} and {:?}",
            self.radicand,
            rhs.radicand
        );
        Scaled {
            radicand: self.radicand.clone(),
            expr: self.expr.add(&rhs.expr.scale_rat(&s.rational)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hyperbolic_constructors_evaluate() {
        let lam = 0.8;
        let z = Complex64::new(0.0, 0.0);
        assert!((XFrac::sinh_pow(3).eval(lam, z).re - lam.sinh().powi(3)).abs() < 1e-14);
        assert!((XFrac::sinh_pow(-2).eval(lam, z).re - lam.sinh().powi(-2)).abs() < 1e-12);
        assert!((XFrac::cosh_pow(2).eval(lam, z).re - lam.cosh().powi(2)).abs() < 1e-14);
        assert!((XFrac::cosh_pow(-1).eval(lam, z).re - 1.0 / lam.cosh()).abs() < 1e-14);
        assert!((XFrac::tanh().eval(lam, z).re - lam.tanh()).abs() < 1e-14);
        assert!((XFrac::inv_tanh().eval(lam, z).re - 1.0 / lam.tanh()).abs() < 1e-14);
        let p = XFrac::one_plus_tanh_pow(-2);
        assert!((p.eval(lam, z).re - (1.0 + lam.tanh()).powi(-2)).abs() < 1e-14);
        let m = XFrac::one_minus_tanh_pow(3);
        assert!((m.eval(lam, z).re - (1.0 - lam.tanh()).powi(3)).abs() < 1e-13);
    }

    #[test]
    fn sinh_times_inverse_is_one() {
        let a = XFrac::sinh_pow(3).mul(&XFrac::sinh_pow(-3));
        assert_eq!(a, XFrac::one());
        let b = XFrac::cosh_pow(2).mul(&XFrac::cosh_pow(-2));
        assert_eq!(b, XFrac::one());
    }

    #[test]
    fn identity_cosh2_minus_sinh2() {
        let id = XFrac::cosh_pow(2).add(&XFrac::sinh_pow(2).neg());
        assert_eq!(id, XFrac::one());
    }

    #[test]
    fn division_by_circles() {
        let n = XPoly::circle_pow(true, 2).mul(&XPoly::circle_pow(false, 1)).shift(-3);
        let q = n.try_div_circle(true).unwrap();
        assert_eq!(
            q.mul(&XPoly::circle_pow(true, 1)),
            n
        );
        assert!(XPoly::one().try_div_circle(true).is_none());
    }

    #[test]
    fn lamexpr_products_track_phases() {
        let sin_part = LamExpr::from_part(0, 1, XFrac::constant(cint(1)))
            .add(&LamExpr::from_part(0, -1, XFrac::constant(cint(-1))));
        // (e^{i rho lambda} - e^{-i rho lambda}) * cosh, at rho = 2, lambda = 0.5
        let e = sin_part.mul(&LamExpr::from_xfrac(XFrac::cosh_pow(1)));
        let got = e.eval(0.5, Complex64::new(2.0, 0.0));
        let expect = Complex64::new(0.0, 2.0 * (1.0f64).sin()) * 0.5f64.cosh();
        assert!((got - expect).norm() < 1e-14);
    }
}
