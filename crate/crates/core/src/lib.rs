//! Hermite-Hadamard type inequalities for harmonically (α, m)-convex functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: log-Gamma, Euler Beta, Gauss ₂F₁ and adaptive Gauss-Kronrod quadrature.
//! - [`convexity`]: the function registry and sampling checkers for (α, m)-convexity and
//!   harmonic (α, m)-convexity.
//! - [`coefficients`]: the λ, μ, ν, λ₁–λ₃ and μ₁–μ₂ coefficient families, each with a
//!   quadrature oracle over its defining integral.
//! - [`inequalities`]: evaluators returning both sides of every bound as a
//!   [`VerificationReport`].
//! - [`means`]: the special means and the inequalities between them.
//! - [`statement`]: dispatch over all evaluators by statement id.
//! - [`sweep`]: seeded parameter sweeps with counterexample shrinking.
//! - [`cli`]: the `hh-verify` command line front end.

pub mod cli;
pub mod coefficients;
pub mod convexity;
mod error;
pub mod inequalities;
pub mod means;
mod report;
pub mod specfun;
pub mod statement;
pub mod sweep;

pub use error::{Error, Result};
pub use report::{Counterexample, ReportInputs, VerificationReport};
