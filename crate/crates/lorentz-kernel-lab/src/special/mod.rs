//! Special functions of `SU(2)` and the Legendre family.
//!
//! Polynomial coefficient tables are exact rationals; floating point enters
//! only at evaluation. All functions here are pure and safe to call
//! concurrently.

mod clebsch;
pub(crate) mod legendre;
mod wigner;

pub use clebsch::{clebsch_gordan, clebsch_gordan_exact};
pub(crate) use legendre::assoc_coeffs;
pub use legendre::{
    legendre_coeffs, legendre_p, legendre_p_explicit_sum, legendre_q, w_coeffs,
};
pub use wigner::{jacobi_p, random_su2, su2_peter_weyl_check, wigner_t, wigner_t_int, Half};
