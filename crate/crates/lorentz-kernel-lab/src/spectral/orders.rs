//! Exact moment identities of the top-degree numerator coefficients.
//!
//! For each lambda-power p, the function multiplying the highest power of
//! rho in the numerator vanishes at lambda = 0 to a definite order; in
//! terms of the exponent shifts j this says the moment sums
//! sum_j a^+_{p,j,top} j^k vanish for all k below a threshold and are
//! nonzero at the threshold. These checks run in exact arithmetic.

use super::integrand::FractionSeries;
use crate::ratmath::{binom_rat, cpow, crat, factorial, rat, ratio, CRat, Rat};
use num_traits::{One, Zero};

/// Which coefficient family of the assembled transforms is being probed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentClass {
    /// coefficients multiplying z (the cocycle-pair part of the one-photon
    /// transforms); lambda powers 0..=2
    Primed,
    /// z-free coefficients of the one-photon transforms; lambda powers 0..=1
    DoublePrimed,
    /// the cloud-overlap transform; lambda powers 0..=1
    Unprimed,
}

#[derive(Debug, Clone)]
pub struct MomentCheck {
    pub p: u8,
    pub top_degree: usize,
    pub threshold: u32,
    /// all moment sums below the threshold vanish (exact)
    pub zero_below: bool,
    /// the moment sum at the threshold is nonzero (exact)
    pub nonzero_at: bool,
    /// the threshold moment value
    pub value: CRat,
}

/// Top-degree coefficients a^+_{p, j, top} of one z-class: returns the
/// common top degree and the list (j, coefficient of rho^top).
pub fn top_coefficients(fs: &FractionSeries, zpow: u8, p: u8) -> (usize, Vec<(i64, CRat)>) {
    assert_eq!(fs.buckets.len(), 1, "moment checks expect a single bucket");
    let bucket = &fs.buckets[0];
    let top = bucket
        .poly
        .terms
        .iter()
        .filter(|t| t.s == 1 && t.zpow == zpow && t.p == p)
        .filter_map(|t| t.coef.degree())
        .max()
        .unwrap_or(0);
    let coefs = bucket
        .poly
        .terms
        .iter()
        .filter(|t| t.s == 1 && t.zpow == zpow && t.p == p)
        .map(|t| (t.j, t.coef.coeff(top)))
        .filter(|(_, c)| !c.is_zero())
        .collect();
    (top, coefs)
}

pub fn moment_sum(coefs: &[(i64, CRat)], k: u32) -> CRat {
    let mut acc = CRat::new(Rat::zero(), Rat::zero());
    for (j, c) in coefs {
        acc += c.clone() * cpow(&crat(rat(*j), Rat::zero()), k);
    }
    acc
}

/// Run the vanishing-moment checks for one transform. `l`, `lp`, `l0` are
/// the weights of the assembled series (for Unprimed, lp and l0 are 0).
pub fn order_identity_check(
    fs: &FractionSeries,
    class: MomentClass,
    l: u32,
    lp: u32,
    l0: i32,
) -> Vec<MomentCheck> {
    let (zpow, p_range, thresholds): (u8, Vec<u8>, Vec<u32>) = match class {
        MomentClass::Primed => {
            let jm = (l + lp) as i64 - l0.abs() as i64;
            (1, vec![0, 1, 2], vec![jm as u32 + 2, jm as u32 + 1, jm as u32])
        }
        MomentClass::DoublePrimed => {
            let jm = l + lp;
            (0, vec![0, 1], vec![jm + 2, jm + 1])
        }
        MomentClass::Unprimed => (0, vec![0, 1], vec![l + 1, l]),
    };
    let expected_top: usize = match class {
        MomentClass::Primed => (l + lp) as usize - l0.unsigned_abs() as usize,
        MomentClass::DoublePrimed => (l + lp) as usize,
        MomentClass::Unprimed => l as usize,
    };
    let mut out = Vec::new();
    for (p, threshold) in p_range.into_iter().zip(thresholds) {
        let (top, coefs) = top_coefficients(fs, zpow, p);
        let mut zero_below = top == expected_top;
        for k in 0..threshold {
            if !moment_sum(&coefs, k).is_zero() {
                zero_below = false;
                break;
            }
        }
        let value = moment_sum(&coefs, threshold);
        out.push(MomentCheck {
            p,
            top_degree: top,
            threshold,
            zero_below,
            nonzero_at: !value.is_zero(),
            value,
        });
    }
    out
}

/// Closed value of the threshold moment of the z-free lambda^1 class for
/// l0 = 1 (valid up to the overall square-root prefactor of the series):
/// (-1)^{l+l'+1}/(l+l'+1)! sum_j a''+_{1,j,l+l'} j^{l+l'+1}.
pub fn double_primed_closed(l: u32, lp: u32) -> CRat {
    let (li, lpi) = (l as i64, lp as i64);
    let mut prod1 = Rat::one();
    for j in 0..lpi {
        prod1 *= ratio(li + j + 1, 2 * (li + j) + 1);
    }
    let mut prod2 = Rat::one();
    for r in 0..=(lpi - 2) {
        prod2 *= rat(li + lpi - r);
    }
    let sign = if (2 * li + lpi) % 2 == 0 { Rat::one() } else { -Rat::one() };
    let value = Rat::from_integer(num_bigint::BigInt::from(2u32).pow((3 * l + 4 * lp) as u32))
        * sign
        * rat(li * lpi)
        * rat((2 * li + 1) * (2 * lpi + 1))
        / Rat::from_integer(factorial((lpi + 1) as u64))
        * binom_rat(&ratio(2 * (li + lpi) - 1, 2), (li + lpi) as u64)
        * binom_rat(&ratio(2 * lpi - 1, 2), lpi as u64)
        * prod1
        * prod2;
    // the 1/i in front
    crat(Rat::zero(), -value)
}

/// Closed value of the threshold moment of the z-marked lambda^2 class for
/// l0 = 1: (-1)^{l+l'-1}/(l+l'-1)! sum_j a'+_{2,j,l+l'-1} j^{l+l'-1}.
/// The power of two is the symmetric 3(l+l')+1; the exact moments pin it
/// (an asymmetric 4l+2l'+1 only coincides on the diagonal).
pub fn primed_closed(l: u32, lp: u32) -> CRat {
    let (li, lpi) = (l as i64, lp as i64);
    let sign = if (2 * li + lpi + 1) % 2 == 0 { Rat::one() } else { -Rat::one() };
    let value = sign
        * Rat::from_integer(num_bigint::BigInt::from(2u32).pow(3 * (l + lp) + 1))
        * rat(li * (li + 1) * lpi * (lpi + 1))
        * binom_rat(&ratio(2 * lpi + 1, 2), (lpi + 1) as u64)
        * binom_rat(&ratio(2 * li + 1, 2), (li + 1) as u64);
    crat(value, Rat::zero())
}
