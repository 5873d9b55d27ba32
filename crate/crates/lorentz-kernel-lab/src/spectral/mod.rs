//! Fourier-transform weights of the invariant kernels and their analytic
//! continuation: an exact integrand algebra over x = e^{-lambda}, a double
//! series engine of simple fractions with a certified remainder, residues,
//! projection functions, and Laurent-coefficient asymptotics.

pub mod continuation;
pub mod forms;
pub mod integrand;
pub mod laurent;
pub mod orders;
pub mod projection;
pub mod poly;
pub mod series;
pub mod xfield;

pub use poly::PolyC;
pub use xfield::{LamExpr, Scaled, XFrac, XPoly};
