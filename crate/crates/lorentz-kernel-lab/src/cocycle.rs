//! The vector-valued cocycle attached to the charge: its components along
//! the boost subgroup by quadrature and by exact closed form, its value at
//! a general group element, the norm identity, and numerical verification
//! of the consistency conditions.
//!
//! Units: all component values are returned divided by the elementary
//! charge e, so the cocycle is i * (real function) in these units.

use crate::error::{domain, Result};
use crate::group::{decompose, GroupElement};
use crate::linalg::Mat2;
use crate::quad;
use crate::ratmath::{rat_to_f64, SqrtRat};
use crate::special::wigner_t_int;
use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type C = Complex64;

/// Physical parameters: the squared elementary charge and the total-charge
/// quantum number; the dimensionless coupling is z = n^2 e^2 / pi.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChargeParams {
    pub e2: f64,
    pub n: i32,
    z_override: Option<f64>,
}

impl ChargeParams {
    pub fn new(n: i32, e2: f64) -> ChargeParams {
        ChargeParams { e2, n, z_override: None }
    }

    /// Parameters with the coupling prescribed directly (e = 1).
    pub fn from_z(z: f64) -> ChargeParams {
        assert!(z >= 0.0, "the coupling z is non-negative");
        ChargeParams { e2: 1.0, n: 0, z_override: Some(z) }
    }

    pub fn z(&self) -> f64 {
        self.z_override
            .unwrap_or(self.n as f64 * self.n as f64 * self.e2 / std::f64::consts::PI)
    }
}

/// Cocycle vector truncated at weight `l_max`; entry (l, m) in units of e.
#[derive(Debug, Clone)]
pub struct BVector {
    pub l_max: u32,
    entries: Vec<Vec<C>>,
}

impl BVector {
    fn zeros(l_max: u32) -> BVector {
        BVector {
            l_max,
            entries: (1..=l_max)
                .map(|l| vec![C::new(0.0, 0.0); 2 * l as usize + 1])
                .collect(),
        }
    }

    pub fn get(&self, l: u32, m: i32) -> C {
        if l == 0 || l > self.l_max || m.unsigned_abs() > l {
            return C::new(0.0, 0.0);
        }
        self.entries[(l - 1) as usize][(m + l as i32) as usize]
    }

    fn set(&mut self, l: u32, m: i32, v: C) {
        self.entries[(l - 1) as usize][(m + l as i32) as usize] = v;
    }

    pub fn max_abs(&self, l_cap: u32) -> f64 {
        let mut worst: f64 = 0.0;
        for l in 1..=l_cap.min(self.l_max) {
            for m in -(l as i32)..=(l as i32) {
                worst = worst.max(self.get(l, m).norm());
            }
        }
        worst
    }
}

/// Compiled boost-line component: numerator terms over (1-x^2)^{q+1} in
/// f64 for large rapidity, plus Taylor coefficients out to the matching
/// point (the closed form cancels catastrophically at small rapidity).
struct CompiledB {
    q: i32,
    terms: Vec<(u8, i64, f64)>,
    taylor: Vec<f64>,
    sqrt_radicand: f64,
    parity_odd: bool,
}

fn compiled_b(l: u32) -> Arc<CompiledB> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CompiledB>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&l) {
        return hit.clone();
    }
    let exact = crate::spectral::forms::exact_b(l);
    let sqrt_radicand = rat_to_f64(&exact.radicand).sqrt();
    let taylor: Vec<f64> = crate::spectral::forms::taylor_of(&exact.expr, 140)
        .iter()
        .map(|c| rat_to_f64(&c.re))
        .collect();
    let poly = crate::spectral::integrand::expoly_from_parts(&[(exact.expr, 0)], None);
    let terms = poly
        .terms
        .iter()
        .map(|t| (t.p, t.j, crate::ratmath::crat_to_c64(&t.coef.coeff(0)).re))
        .collect();
    let compiled = Arc::new(CompiledB {
        q: poly.q as i32,
        terms,
        taylor,
        sqrt_radicand,
        parity_odd: l % 2 == 1,
    });
    cache.lock().unwrap().insert(l, compiled.clone());
    compiled
}

impl CompiledB {
    fn eval(&self, lambda: f64) -> f64 {
        let sign = if lambda < 0.0 && self.parity_odd { -1.0 } else { 1.0 };
        let lam = lambda.abs();
        let value = if lam < 2.4 {
            let mut acc = 0.0;
            let mut pw = 1.0;
            for c in &self.taylor {
                acc += c * pw;
                pw *= lam;
            }
            acc
        } else {
            let x = (-lam).exp();
            let den = (1.0 - x * x).powi(self.q + 1);
            let mut acc = 0.0;
            for &(p, j, c) in &self.terms {
                acc += c * lam.powi(p as i32) * x.powi(j as i32);
            }
            acc / den
        };
        sign * value * self.sqrt_radicand
    }
}

/// Boost-line component B_{l,0}(lambda)/e by quadrature of the generating
/// matrix elements: i sqrt(8/3) int_0^lambda A_{1,0; l,0}.
pub fn b_component_integral(l: u32, lambda: f64) -> Result<C> {
    if l == 0 {
        return Err(domain("cocycle components start at weight 1"));
    }
    let lam = lambda.abs();
    let mut f = |x: f64| C::new(crate::reps::rep_a_element(1, 0, l, 0, x).unwrap_or(0.0), 0.0);
    let (v, _) = quad::adaptive(&mut f, 0.0, lam, 1e-12)?;
    let mut value = (8.0f64 / 3.0).sqrt() * v.re;
    if lambda < 0.0 && l % 2 == 1 {
        value = -value;
    }
    Ok(C::new(0.0, value))
}

/// Boost-line component B_{l,0}(lambda)/e from the exact closed form
/// (Taylor branch below the matching rapidity).
pub fn b_component_closed(l: u32, lambda: f64) -> Result<C> {
    if l == 0 {
        return Err(domain("cocycle components start at weight 1"));
    }
    Ok(C::new(0.0, compiled_b(l).eval(lambda)))
}

/// Cocycle value at a general group element, truncated at `l_max`:
/// B_{l,m}(g) = B_{l,0}(lambda) T^l_{0,m}(a2), in units of e.
pub fn b_general(g: &GroupElement, l_max: u32) -> Result<BVector> {
    let coords = decompose(g)?;
    let a2 = crate::group::a2_matrix(coords.vartheta, coords.phi);
    let mut out = BVector::zeros(l_max);
    for l in 1..=l_max {
        let radial = b_component_closed(l, coords.lambda)?;
        for m in -(l as i32)..=(l as i32) {
            let t = wigner_t_int(l, 0, m, &a2)?;
            out.set(l, m, radial * t);
        }
    }
    Ok(out)
}

/// Truncated norm square sum_{l <= l_max} |B_{l,0}(lambda)|^2 in units e^2.
pub fn norm_b_squared(lambda: f64, l_max: u32) -> f64 {
    (1..=l_max).map(|l| compiled_b(l).eval(lambda).powi(2)).sum()
}

/// The closed value 8 (lambda coth lambda - 1) the norm converges to
/// (units e^2).
pub fn norm_b_closed(lambda: f64) -> f64 {
    if lambda == 0.0 {
        return 0.0;
    }
    8.0 * (lambda * lambda.cosh() / lambda.sinh() - 1.0)
}

/// Table of photon-cloud matrix elements along a boost, diagonal in m.
pub struct BoostTable {
    pub l_max: u32,
    data: Vec<Vec<Vec<f64>>>,
}

impl BoostTable {
    /// Batched evaluation on a shared Gauss-Legendre grid.
    pub fn new(lambda: f64, l_max: u32) -> BoostTable {
        let order = 80 + (4.0 * lambda.abs()) as usize;
        let rule = quad::gauss_legendre(order);
        let lam = lambda.abs();
        let t = lam.tanh();
        let lm = l_max as usize;
        let mut data = vec![vec![vec![0.0; lm]; lm]; 2 * lm + 1];
        for m in 0..=(l_max as i32) {
            let mut left = vec![vec![0.0; lm + 1]; rule.len()];
            let mut right = vec![vec![0.0; lm + 1]; rule.len()];
            for (i, &(y, _)) in rule.iter().enumerate() {
                let w = (t + y) / (1.0 + t * y);
                for l in (m as u32).max(1)..=l_max {
                    left[i][l as usize] = crate::special::legendre_p(l, m, y).unwrap();
                    right[i][l as usize] = crate::special::legendre_p(l, m, w).unwrap();
                }
            }
            for l in (m as u32).max(1)..=l_max {
                for lp in (m as u32).max(1)..=l_max {
                    let mut acc = 0.0;
                    for (i, &(_, wgt)) in rule.iter().enumerate() {
                        acc += wgt * left[i][l as usize] * right[i][lp as usize];
                    }
                    let value = a_norm(l, m, lp) * acc;
                    let signed =
                        if lambda < 0.0 && (l + lp) % 2 == 1 { -value } else { value };
                    data[(m + l_max as i32) as usize][(l - 1) as usize][(lp - 1) as usize] =
                        signed;
                    data[(-m + l_max as i32) as usize][(l - 1) as usize][(lp - 1) as usize] =
                        signed;
                }
            }
        }
        BoostTable { l_max, data }
    }

    pub fn get(&self, l: u32, m: i32, lp: u32) -> f64 {
        if l == 0 || lp == 0 || m.unsigned_abs() > l.min(lp) || l > self.l_max || lp > self.l_max
        {
            return 0.0;
        }
        self.data[(m + self.l_max as i32) as usize][(l - 1) as usize][(lp - 1) as usize]
    }
}

fn a_norm(l: u32, m: i32, lp: u32) -> f64 {
    let lf = l as f64;
    let lpf = lp as f64;
    let fact_ratio = |l: u32, m: i32| -> f64 {
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
    (lf * (lf + 1.0) * (2.0 * lf + 1.0) * (2.0 * lpf + 1.0) / (lpf * (lpf + 1.0) * 4.0)
        * fact_ratio(l, m)
        * fact_ratio(lp, m))
    .sqrt()
}

/// Apply the photon-cloud representation of a general group element to a
/// truncated cocycle vector from the right: v -> v A(g). The element is
/// split through the six-angle decomposition; the unitary factors act
/// blockwise and the boost factor through a `BoostTable`.
pub fn apply_a(v: &BVector, g: &GroupElement) -> Result<BVector> {
    let coords = decompose(g)?;
    let a1 = crate::group::euler_su2(coords.theta1, coords.phi1, coords.vartheta1);
    let a2 = crate::group::a2_matrix(coords.vartheta, coords.phi);
    let table = BoostTable::new(coords.lambda, v.l_max);
    let step1 = apply_block_unitary(v, &a1.dagger())?;
    let step2 = apply_block_unitary(&step1, &a2.dagger())?;
    let step3 = apply_boost_table(&step2, &table);
    apply_block_unitary(&step3, &a2)
}

fn apply_block_unitary(v: &BVector, a: &Mat2) -> Result<BVector> {
    let mut out = BVector::zeros(v.l_max);
    for l in 1..=v.l_max {
        let d = 2 * l as i32 + 1;
        let mut t = vec![C::new(0.0, 0.0); (d * d) as usize];
        for mi in 0..d {
            for ni in 0..d {
                t[(mi * d + ni) as usize] = wigner_t_int(l, mi - l as i32, ni - l as i32, a)?;
            }
        }
        for ni in 0..d {
            let mut acc = C::new(0.0, 0.0);
            for mi in 0..d {
                acc += v.get(l, mi - l as i32) * t[(mi * d + ni) as usize];
            }
            out.set(l, ni - l as i32, acc);
        }
    }
    Ok(out)
}

fn apply_boost_table(v: &BVector, table: &BoostTable) -> BVector {
    let mut out = BVector::zeros(v.l_max);
    for lp in 1..=v.l_max {
        for m in -(lp as i32)..=(lp as i32) {
            let mut acc = C::new(0.0, 0.0);
            for l in m.unsigned_abs().max(1)..=v.l_max {
                acc += v.get(l, m) * table.get(l, m, lp);
            }
            out.set(lp, m, acc);
        }
    }
    out
}

/// Max-norm residual of the additivity condition
/// B(gh) - B(g) A(h) - B(h) over entries with l <= l_max - 2 (the edge
/// weights carry the truncation defect).
pub fn verify_cocycle(g: &GroupElement, h: &GroupElement, l_max: u32) -> Result<f64> {
    let gh = g.mul(h);
    let b_gh = b_general(&gh, l_max)?;
    let b_g = b_general(g, l_max)?;
    let b_h = b_general(h, l_max)?;
    let moved = apply_a(&b_g, h)?;
    let mut residual = BVector::zeros(l_max);
    for l in 1..=l_max {
        for m in -(l as i32)..=(l as i32) {
            residual.set(l, m, b_gh.get(l, m) - moved.get(l, m) - b_h.get(l, m));
        }
    }
    Ok(residual.max_abs(l_max.saturating_sub(2)))
}

/// Max-norm residual of the inverse relation B(g) A(g^{-1}) + B(g^{-1}).
pub fn inverse_relation_residual(g: &GroupElement, l_max: u32) -> Result<f64> {
    let moved = apply_a(&b_general(g, l_max)?, &g.inverse())?;
    let b_inv = b_general(&g.inverse(), l_max)?;
    let mut residual = BVector::zeros(l_max);
    for l in 1..=l_max {
        for m in -(l as i32)..=(l as i32) {
            residual.set(l, m, moved.get(l, m) + b_inv.get(l, m));
        }
    }
    Ok(residual.max_abs(l_max.saturating_sub(2)))
}

/// Exact expansion data of the closed forms at small rapidity and the sum
/// identity tying the oscillator-basis coefficients to the leading
/// coefficient of the generating matrix element.
#[derive(Debug, Clone)]
pub struct CoefficientTables {
    pub l: u32,
    /// leading small-rapidity coefficient a_{1,l,0} of A_{1,0; l,0}
    pub a_leading: SqrtRat,
    /// b_{l,0} * 4 pi / n: the leading cocycle Taylor coefficient with the
    /// charge number divided out (pure imaginary; the i is implicit)
    pub b_leading_over_n: SqrtRat,
    /// oscillator-basis coefficients of the closed form, divided by i e
    pub frak_b: Vec<SqrtRat>,
    /// sum of the lambda-part coefficients and its two closed forms
    pub sum_b: SqrtRat,
    pub sum_b_via_a0: SqrtRat,
    pub sum_b_closed: SqrtRat,
}

/// Leading small-rapidity coefficient a_{l',l,0} of A_{l',0; l,0} for
/// l' <= l: the product of ladder factors over the intermediate weights.
/// In this realization the above-diagonal coefficients are positive; the
/// transposed (below-diagonal) elements carry the alternating sign
/// (-1)^{l-l'}, matching the transposition parity of the matrix.
pub fn a_expansion_leading(lp: u32, l: u32) -> SqrtRat {
    use crate::ratmath::{rat, ratio, Rat};
    use num_traits::One;
    assert!(lp <= l);
    if lp == l {
        return SqrtRat::one();
    }
    let order = l - lp;
    let mut rad = Rat::one();
    let mut rational = Rat::one();
    for j in 0..order {
        let w = (l - j) as i64;
        rational *= rat(w);
        rad *= ratio(w * w - 1, 4 * w * w - 1);
    }
    let mut fact = Rat::one();
    for k in 1..=order as i64 {
        fact *= rat(k);
    }
    SqrtRat::sqrt_of(rad).scale(&(rational / fact))
}

/// The constant a_0 of the closed normal shape of A_{l,m; l',m}: the
/// value at lambda = 0 of the function multiplying lambda in the cleared
/// numerator A sinh^{l+l'+1} (not the same as the first Taylor
/// coefficient of the full numerator, whose plain part also contributes).
pub fn a0_from_exact_form(l: u32, m: i32, lp: u32) -> SqrtRat {
    use num_traits::Zero;
    let a = crate::spectral::forms::exact_a(l, m, lp);
    let cleared = a
        .expr
        .mul_xfrac(&crate::spectral::xfield::XFrac::sinh_pow((l + lp + 1) as i64));
    let mut value = crate::ratmath::Rat::zero();
    if let Some(f) = cleared.parts.get(&(1u8, 0i8)) {
        let f = f.reduced();
        assert_eq!(f.m1, 0, "cleared numerator expected");
        // value at lambda = 0 is the sum of the x-coefficients
        for cpoly in &f.num.c {
            value += cpoly.coeff(0).re.clone();
        }
    }
    SqrtRat::sqrt_of(a.radicand).scale(&value)
}

/// Closed product formula for the first Taylor coefficient of
/// A_{l,-1; l',-1} sinh^{l+l'+1}.
pub fn a0_closed_m_minus_one(l: u32, lp: u32) -> SqrtRat {
    use crate::ratmath::{binom_rat, factorial, rat, ratio, Rat};
    use num_traits::One;
    let (li, lpi) = (l as i64, lp as i64);
    let mut prod1 = Rat::one();
    for j in 0..lpi {
        prod1 *= ratio(li + j + 1, 2 * (li + j) + 1);
    }
    let mut prod2 = Rat::one();
    for r in 0..=(lpi - 2) {
        prod2 *= rat(li + lpi - r);
    }
    let sign = if l % 2 == 0 { 1 } else { -1 };
    let rational = rat(sign * li * lpi)
        * Rat::from_integer(num_bigint::BigInt::from(2u32).pow(l + 2 * lp))
        / Rat::from_integer(factorial((li + 1) as u64))
        * binom_rat(&ratio(2 * (li + lpi) - 1, 2), (li + lpi) as u64)
        * binom_rat(&ratio(2 * lpi - 1, 2), lpi as u64)
        * prod1
        * prod2;
    SqrtRat::sqrt_of(rat((2 * li + 1) * (2 * lpi + 1))).scale(&rational)
}

/// Exact coefficient tables for weight l <= 10.
pub fn coefficient_tables(l: u32) -> Result<CoefficientTables> {
    use crate::ratmath::{binom_rat, ratio, Rat};
    use num_traits::Zero;
    if l == 0 || l > 10 {
        return Err(domain("coefficient tables cover weights 1..=10"));
    }
    let a_leading = a_expansion_leading(1, l);
    // b_{l,0} = i (n/4 pi) sqrt(8/3) (-1)^{l-1}/l a_{1,l,0}
    let b_leading_over_n = SqrtRat::sqrt_of(ratio(8, 3))
        .mul(&a_leading)
        .scale(&ratio(if l % 2 == 1 { 1 } else { -1 }, l as i64));

    let frak_b = oscillator_basis_coefficients(l)?;
    let keep = if l % 2 == 1 { (l as usize + 1) / 2 } else { l as usize / 2 };
    let mut sum_b = SqrtRat::rational(Rat::zero());
    for coef in frak_b.iter().take(keep) {
        sum_b = add_sqrt(&sum_b, coef);
    }
    let a0 = a0_from_exact_form(l, 0, 1);
    let sum_b_via_a0 = SqrtRat::sqrt_of(ratio(8, 3))
        .mul(&a0)
        .scale(&ratio(if l % 2 == 0 { 1 } else { -1 }, (l + 1) as i64));
    let sum_b_closed = SqrtRat::sqrt_of(ratio((l * (l + 1)) as i64, (2 * l + 1) as i64)).scale(
        &(-Rat::from_integer(num_bigint::BigInt::from(2u32).pow(l + 2))
            * binom_rat(&ratio(2 * l as i64 + 1, 2), (l + 1) as u64)),
    );
    Ok(CoefficientTables {
        l,
        a_leading,
        b_leading_over_n,
        frak_b,
        sum_b,
        sum_b_via_a0,
        sum_b_closed,
    })
}

fn add_sqrt(a: &SqrtRat, b: &SqrtRat) -> SqrtRat {
    use num_traits::Zero;
    if a.rational.is_zero() {
        return b.clone();
    }
    if b.rational.is_zero() {
        return a.clone();
    }
    let ratio_sqrt = SqrtRat::sqrt_of(&b.radicand / &a.radicand);
    assert!(ratio_sqrt.is_rational(), "incompatible radicands in coefficient sum");
    SqrtRat {
        rational: &a.rational + &b.rational * &ratio_sqrt.rational,
        radicand: a.radicand.clone(),
    }
}

/// Coefficients of the closed form in the oscillator basis over
/// sinh^{l+1}: for odd l = 2k+1 the numerator is
/// lambda sum_j b_j cosh(2j lambda) + sum_j b_{k+j} sinh(2j lambda); for
/// even l = 2k it is lambda sum_j b'_j cosh^{2j+1} + sum_j b'_{k+j}
/// sinh^{2j+1}. All values in units of i e.
pub fn oscillator_basis_coefficients(l: u32) -> Result<Vec<SqrtRat>> {
    use crate::ratmath::{CRat, Rat};
    use num_traits::Zero;
    let exact = crate::spectral::forms::exact_b(l);
    let cleared = exact
        .expr
        .mul_xfrac(&crate::spectral::xfield::XFrac::sinh_pow((l + 1) as i64));
    let mut lam_part = crate::spectral::XPoly::zero();
    let mut plain_part = crate::spectral::XPoly::zero();
    for (&(p, s), f) in &cleared.parts {
        assert_eq!(s, 0);
        let f = f.reduced();
        assert_eq!(f.m1, 0, "denominator must clear for the oscillator basis");
        assert_eq!(f.p1, 0);
        match p {
            0 => plain_part = f.num.clone(),
            1 => lam_part = f.num.clone(),
            _ => return Err(domain("unexpected rapidity power in the closed form")),
        }
    }
    let coeff_of = |p: &crate::spectral::XPoly, pow: i64| -> Rat {
        let c: CRat = p.coeff(pow).coeff(0);
        c.re.clone()
    };
    let out: Vec<Rat> = if l % 2 == 1 {
        let k = (l - 1) / 2;
        // cosh(2j l) and sinh(2j l) contribute x^{-2j}/2 at the top
        let mut v = vec![coeff_of(&lam_part, 0)];
        for j in 1..=k {
            v.push(coeff_of(&lam_part, -(2 * j as i64)) * crate::ratmath::rat(2));
        }
        for j in 1..=(k + 1) {
            v.push(coeff_of(&plain_part, -(2 * j as i64)) * crate::ratmath::rat(2));
        }
        v
    } else {
        let k = l / 2;
        // powers cosh^{2j+1}, sinh^{2j+1} are triangular from the top
        let solve = |poly: &crate::spectral::XPoly, odd_sign: bool, count: usize| -> Vec<Rat> {
            let mut residue = poly.clone();
            let mut coefs = vec![Rat::zero(); count];
            for j in (0..count).rev() {
                let pw = 2 * j as i64 + 1;
                let top = coeff_of(&residue, -pw);
                let scale =
                    top * Rat::from_integer(num_bigint::BigInt::from(2u32).pow(pw as u32));
                if !scale.is_zero() {
                    let base = if odd_sign {
                        crate::spectral::xfield::XFrac::sinh_pow(pw)
                    } else {
                        crate::spectral::xfield::XFrac::cosh_pow(pw)
                    };
                    let sub = base.num.scale(&CRat::new(scale.clone(), Rat::zero()));
                    residue = residue.add(&sub.neg());
                }
                coefs[j] = scale;
            }
            assert!(residue.is_zero(), "oscillator basis failed to span the numerator");
            coefs
        };
        let mut v = solve(&lam_part, false, k as usize);
        v.extend(solve(&plain_part, true, (k + 1) as usize));
        v
    };
    let sq = SqrtRat::sqrt_of(exact.radicand);
    Ok(out.into_iter().map(|r| sq.scale(&r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{boost, random_element, rotation};

    #[test]
    fn integral_and_closed_forms_agree() {
        for l in 1..=6u32 {
            for lam in [0.1, 0.5, 1.0, 2.0, 3.5, 6.0] {
                let a = b_component_integral(l, lam).unwrap();
                let b = b_component_closed(l, lam).unwrap();
                assert!(
                    (a - b).norm() < 1e-9 * a.norm().max(1e-4),
                    "l={l} lam={lam}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn weight_one_closed_display() {
        // B_{1,0}(1)/(i e) = sqrt(6)(sinh 2 - 2)/(2 sinh^2 1)
        let v = b_component_closed(1, 1.0).unwrap();
        let expect = 6.0f64.sqrt() * (2.0f64.sinh() - 2.0) / (2.0 * 1.0f64.sinh().powi(2));
        assert!((v.im - expect).abs() < 1e-12 && v.re == 0.0);
        assert!((v.im - 1.4427).abs() < 1e-4);
    }

    #[test]
    fn starts_at_zero_and_reaches_the_plateau() {
        for l in 1..=5u32 {
            assert_eq!(b_component_closed(l, 0.0).unwrap(), C::new(0.0, 0.0));
            let limit = 2.0 * ((2 * l + 1) as f64 / (l * (l + 1)) as f64).sqrt();
            let far = b_component_closed(l, 28.0).unwrap();
            assert!((far.im - limit).abs() < 1e-9, "l={l}");
        }
    }

    #[test]
    fn parity_along_the_boost() {
        for l in 1..=4u32 {
            let plus = b_component_closed(l, 1.3).unwrap();
            let minus = b_component_closed(l, -1.3).unwrap();
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            assert!((plus.im - sign * minus.im).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_identity_converges() {
        for lam in [0.5, 1.0, 2.0, 4.0] {
            let truncated = norm_b_squared(lam, 20);
            let closed = norm_b_closed(lam);
            assert!(
                (truncated - closed).abs() < 1e-6,
                "lam={lam}: {truncated} vs {closed}"
            );
        }
        // spot value 8 (coth 1 - 1) ~ 2.5043 at lambda = 1
        assert!((norm_b_closed(1.0) - 2.504282).abs() < 1e-5);
        assert_eq!(norm_b_squared(0.0, 12), 0.0);
        // monotone in lambda
        assert!(norm_b_closed(2.0) > norm_b_closed(1.0));
    }

    #[test]
    fn vanishes_on_the_unitary_subgroup() {
        let a = rotation((1, 3), 0.9)
            .unwrap()
            .mul(&rotation((1, 2), 2.2).unwrap());
        let b = b_general(&a, 8).unwrap();
        assert!(b.max_abs(8) < 1e-12);
    }

    #[test]
    fn boost_value_fills_only_m_zero() {
        let b = b_general(&boost(1.2), 6).unwrap();
        for l in 1..=6u32 {
            let expect = b_component_closed(l, 1.2).unwrap();
            assert!((b.get(l, 0) - expect).norm() < 1e-12);
            for m in 1..=(l as i32) {
                assert_eq!(b.get(l, m), C::new(0.0, 0.0));
                assert_eq!(b.get(l, -m), C::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn additivity_for_boost_pairs() {
        let res = verify_cocycle(&boost(0.8), &boost(1.1), 20).unwrap();
        assert!(res < 1e-8, "residual {res}");
    }

    #[test]
    fn additivity_for_random_elements() {
        let mut st = 0x5eedu64;
        for _ in 0..3 {
            let g = random_element(&mut st, 1.5);
            let h = random_element(&mut st, 1.5);
            let res = verify_cocycle(&g, &h, 18).unwrap();
            assert!(res < 3e-6, "residual {res}");
        }
    }

    #[test]
    fn identity_element_is_exact() {
        let mut st = 77u64;
        let g = random_element(&mut st, 2.0);
        let res = verify_cocycle(&g, &GroupElement::identity(), 12).unwrap();
        assert!(res < 1e-12);
    }

    #[test]
    fn inverse_relation_holds() {
        let mut st = 99u64;
        let g = random_element(&mut st, 1.5);
        let res = inverse_relation_residual(&g, 18).unwrap();
        assert!(res < 3e-6, "residual {res}");
    }

    #[test]
    fn coefficient_tables_sum_identity() {
        for l in 1..=8u32 {
            let t = coefficient_tables(l).unwrap();
            let r1 = t.sum_b.mul(&t.sum_b);
            let r2 = t.sum_b_via_a0.mul(&t.sum_b_via_a0);
            let r3 = t.sum_b_closed.mul(&t.sum_b_closed);
            assert!(r1.is_rational() && r2.is_rational() && r3.is_rational());
            assert_eq!(r1.rational, r2.rational, "l={l}: lambda-part sum vs a0 route");
            assert_eq!(r1.rational, r3.rational, "l={l}: lambda-part sum vs closed form");
            assert!((t.sum_b.to_f64() - t.sum_b_closed.to_f64()).abs() < 1e-9);
        }
    }

    #[test]
    fn oscillator_coefficients_are_nonzero() {
        for l in 1..=6u32 {
            let t = coefficient_tables(l).unwrap();
            assert_eq!(t.frak_b.len(), (l + 1) as usize);
            for (j, c) in t.frak_b.iter().enumerate() {
                assert!(c.to_f64().abs() > 1e-14, "l={l} j={j}");
            }
        }
    }

    #[test]
    fn a0_closed_product_matches_exact_form() {
        for (l, lp) in [(1u32, 1u32), (1, 2), (2, 2), (2, 3)] {
            let closed = a0_closed_m_minus_one(l, lp);
            let exact = a0_from_exact_form(l, -1, lp);
            assert!(
                (closed.to_f64() - exact.to_f64()).abs() < 1e-10 * exact.to_f64().abs(),
                "l={l} lp={lp}: closed {} vs exact {}",
                closed.to_f64(),
                exact.to_f64()
            );
        }
        // (1,1) value pinned by hand reduction: -3/2
        assert!((a0_closed_m_minus_one(1, 1).to_f64() + 1.5).abs() < 1e-12);
    }

    #[test]
    fn expansion_leading_matches_quadrature_fit() {
        for (lp, l) in [(1u32, 2u32), (1, 3), (2, 4)] {
            let lead = a_expansion_leading(lp, l).to_f64();
            let order = (l - lp) as i32;
            let f =
                |lam: f64| crate::reps::rep_a_element(lp, 0, l, 0, lam).unwrap() / lam.powi(order);
            let (v1, v2) = (f(0.02), f(0.01));
            let fitted = v2 + (v2 - v1) / 3.0;
            assert!(
                (fitted - lead).abs() < 1e-5 * lead.abs(),
                "lp={lp} l={l}: {fitted} vs {lead}"
            );
            // transposed elements alternate in sign
            let below = crate::reps::rep_a_element(l, 0, lp, 0, 0.01).unwrap();
            let expect_sign = if order % 2 == 0 { 1.0 } else { -1.0 };
            assert!(below.signum() == expect_sign * fitted.signum());
        }
    }

    #[test]
    fn a0_via_basis_fit_oracle() {
        // least-squares fit of the quadrature route in the closed normal
        // basis {sinh^j cosh^{J-j}} + lambda {sinh^j cosh^{J-j}}
        for (l, lp) in [(1u32, 1u32), (1, 2)] {
            let m = -1i32;
            let big_j = (l + lp) as i32; // l+l' - ||m|-1| with |m| = 1
            let grid: Vec<f64> = (1..=24).map(|i| 0.1 + 0.08 * i as f64).collect();
            let mut basis: Vec<Vec<f64>> = Vec::new();
            let mut rhs: Vec<f64> = Vec::new();
            // columns: lambda-carrying even-j terms first (a0 is column 0)
            let mut columns: Vec<(bool, i32)> = Vec::new();
            for j in (0..=big_j).step_by(2) {
                columns.push((true, j));
            }
            for j in (1..=big_j).step_by(2) {
                columns.push((false, j));
            }
            for &lam in &grid {
                let mut row = Vec::new();
                for &(with_lambda, j) in &columns {
                    let v = lam.sinh().powi(j) * lam.cosh().powi(big_j - j)
                        * if with_lambda { lam } else { 1.0 };
                    row.push(v);
                }
                basis.push(row);
                rhs.push(
                    crate::reps::rep_a_element(l, m, lp, m, lam).unwrap()
                        * lam.sinh().powi((l + lp + 1) as i32),
                );
            }
            // normal equations
            let nc = columns.len();
            let mut ata = vec![vec![0.0f64; nc]; nc];
            let mut atb = vec![0.0f64; nc];
            for (row, &b) in basis.iter().zip(rhs.iter()) {
                for i in 0..nc {
                    for j in 0..nc {
                        ata[i][j] += row[i] * row[j];
                    }
                    atb[i] += row[i] * b;
                }
            }
            // gaussian elimination
            for col in 0..nc {
                let piv = (col..nc).max_by(|&a, &b| ata[a][col].abs().partial_cmp(&ata[b][col].abs()).unwrap()).unwrap();
                ata.swap(col, piv);
                atb.swap(col, piv);
                for r in (col + 1)..nc {
                    let f = ata[r][col] / ata[col][col];
                    for c in col..nc {
                        ata[r][c] -= f * ata[col][c];
                    }
                    atb[r] -= f * atb[col];
                }
            }
            let mut x = vec![0.0f64; nc];
            for col in (0..nc).rev() {
                let mut acc = atb[col];
                for c in (col + 1)..nc {
                    acc -= ata[col][c] * x[c];
                }
                x[col] = acc / ata[col][col];
            }
            let fitted_a0 = x[0];
            let exact = a0_from_exact_form(l, m, lp).to_f64();
            assert!(
                (fitted_a0 - exact).abs() < 1e-6 * exact.abs().max(0.1),
                "l={l} lp={lp}: fit {fitted_a0} vs exact {exact}"
            );
        }
    }
}
