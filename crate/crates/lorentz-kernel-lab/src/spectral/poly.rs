//! Dense polynomials in the spectral parameter rho over Gaussian rationals.

use crate::ratmath::{cint, crat_to_c64, CRat, Rat};
use num_complex::Complex64;
use num_traits::Zero;

/// Polynomial in rho; `c[k]` is the coefficient of rho^k.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyC {
    pub c: Vec<CRat>,
}

impl PolyC {
    pub fn zero() -> PolyC {
        PolyC { c: Vec::new() }
    }

    pub fn one() -> PolyC {
        PolyC::constant(cint(1))
    }

    pub fn constant(v: CRat) -> PolyC {
        let mut p = PolyC { c: vec![v] };
        p.trim();
        p
    }

    /// The monomial rho.
    pub fn rho() -> PolyC {
        PolyC { c: vec![cint(0), cint(1)] }
    }

    /// (shift + rho), shift a Gaussian rational.
    pub fn linear(shift: CRat) -> PolyC {
        PolyC { c: vec![shift, cint(1)] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> CRat {
        self.c.get(k).cloned().unwrap_or_else(|| cint(0))
    }

    fn trim(&mut self) {
        while self.c.last().map(|v| v.is_zero()).unwrap_or(false) {
            self.c.pop();
        }
    }

    pub fn add(&self, rhs: &PolyC) -> PolyC {
        let n = self.c.len().max(rhs.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(self.coeff(k) + rhs.coeff(k));
        }
        let mut p = PolyC { c };
        p.trim();
        p
    }

    pub fn neg(&self) -> PolyC {
        PolyC { c: self.c.iter().map(|v| -v.clone()).collect() }
    }

    pub fn sub(&self, rhs: &PolyC) -> PolyC {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &PolyC) -> PolyC {
        if self.is_zero() || rhs.is_zero() {
            return PolyC::zero();
        }
        let mut c = vec![cint(0); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                c[i + j] += a.clone() * b.clone();
            }
        }
        let mut p = PolyC { c };
        p.trim();
        p
    }

    pub fn scale(&self, v: &CRat) -> PolyC {
        let mut p = PolyC { c: self.c.iter().map(|a| a.clone() * v.clone()).collect() };
        p.trim();
        p
    }

    pub fn scale_rat(&self, v: &Rat) -> PolyC {
        self.scale(&CRat::new(v.clone(), Rat::zero()))
    }

    pub fn derivative(&self) -> PolyC {
        if self.c.len() <= 1 {
            return PolyC::zero();
        }
        let mut c = Vec::with_capacity(self.c.len() - 1);
        for (k, a) in self.c.iter().enumerate().skip(1) {
            c.push(a.clone() * cint(k as i64));
        }
        let mut p = PolyC { c };
        p.trim();
        p
    }

    pub fn eval(&self, x: &CRat) -> CRat {
        let mut acc = cint(0);
        for a in self.c.iter().rev() {
            acc = acc * x.clone() + a.clone();
        }
        acc
    }

    pub fn eval_c64(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for a in self.c.iter().rev() {
            acc = acc * x + crat_to_c64(a);
        }
        acc
    }

    /// Exact division by the monic linear factor (rho - root); None if the
    /// remainder is nonzero.
    pub fn div_linear_root(&self, root: &CRat) -> Option<PolyC> {
        if self.is_zero() {
            return Some(PolyC::zero());
        }
        let mut q = vec![cint(0); self.c.len() - 1];
        let mut carry = cint(0);
        for k in (0..self.c.len()).rev() {
            let v = self.c[k].clone() + carry.clone() * root.clone();
            if k == 0 {
                if !v.is_zero() {
                    return None;
                }
            } else {
                q[k - 1] = v.clone();
                carry = v;
            }
        }
        let mut p = PolyC { c: q };
        p.trim();
        Some(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratmath::{crat, rat};

    #[test]
    fn arithmetic_roundtrip() {
        // (rho^2 + 1) = (rho - i)(rho + i)
        let i = crat(rat(0), rat(1));
        let p = PolyC::linear(-i.clone()).mul(&PolyC::linear(i.clone()));
        assert_eq!(p.c, vec![cint(1), cint(0), cint(1)]);
        let q = p.div_linear_root(&i).unwrap();
        assert_eq!(q, PolyC::linear(i.clone()));
        assert!(p.div_linear_root(&cint(3)).is_none());
        assert_eq!(p.derivative().c, vec![cint(0), cint(2)]);
        assert_eq!(p.eval(&cint(2)), cint(5));
    }
}
