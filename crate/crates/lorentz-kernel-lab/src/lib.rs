//! Numerical toolkit for the unitary representation theory of `SL(2,C)`
//! acting on the state space of an infrared-photon cloud sourced by a
//! static charge.
//!
//! The crate computes, cross-checks and analytically continues the scalar
//! data of that representation:
//!
//! * exact and floating-point special functions of `SU(2)` and the
//!   Legendre family ([`special`]),
//! * the six-angle coordinate decomposition of group elements and the
//!   invariant measure ([`group`]),
//! * principal-series matrix elements along the boost subgroup, by
//!   adaptive quadrature and by catalogued closed forms ([`reps`]),
//! * the vector-valued cocycle attached to the charge and its consistency
//!   conditions ([`cocycle`]),
//! * invariant positive-definite kernels for cyclic vectors with up to two
//!   photon creation operators ([`kernels`]),
//! * Fourier-transform weights of those kernels, their continuation in the
//!   coupling parameter via double series of simple fractions, residues,
//!   projection functions and Laurent asymptotics ([`spectral`]).
//!
//! The `examples/` directory contains one runnable program per capability;
//! the `lorentz-kernel-lab` binary exposes evaluation grids and named
//! verification suites on the command line.

pub mod cli;
pub mod cocycle;
pub mod dd;
pub mod error;
pub mod group;
pub mod kernels;
pub mod linalg;
pub mod quad;
pub mod ratmath;
pub mod reps;
pub mod special;
pub mod spectral;

pub use error::{Error, Result};
pub use group::GroupElement;
pub use reps::RepLabel;
