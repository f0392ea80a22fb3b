//! Exact enumeration and asymptotics of lattice walks confined to the
//! chamber x_1 < x_2 < … < x_k.
//!
//! Two step sets are supported: lock step (every coordinate moves ±1 each
//! step) and random turns (one coordinate moves ±1 per step). The crate
//! provides:
//!
//! - exact big-integer counts via the signed permutation (reflection)
//!   formula, checked against a brute-force dynamic program;
//! - first- and second-order asymptotic estimates for fixed and free
//!   endpoints, with convergence diagnostics against exact counts;
//! - an exact symmetric-function engine (Schur polynomials, determinant
//!   series expansions, the Cauchy identity);
//! - closed-form squared-Vandermonde integrals (Hermite and Laguerre
//!   weights) with a Gaussian-quadrature oracle.
//!
//! With the default `parallel` feature, the heavy inner loops (reflection
//! sums, dynamic-programming layers) run on a rayon pool; disabling the
//! feature yields a fully sequential build with identical results.

pub mod asympt;
pub mod count;
pub mod error;
pub mod model;
pub mod perm;
pub mod qrat;
pub mod schur;
pub mod selberg;
pub mod series;
pub mod symreal;

pub use error::{Error, Result};
pub use model::{ChamberPoint, Model, ModelKind};
