//! Special-function kernel: log-Gamma, Beta, Gauss ₂F₁ and adaptive quadrature.
//!
//! Everything here is a pure function of its arguments.

mod gamma;
mod hypergeometric;
mod quadrature;
mod summation;

pub use gamma::{beta, ln_gamma};
pub use hypergeometric::{
    gauss_2f1, gauss_2f1_integral, gauss_2f1_series, HypergeometricArgs, SERIES_SWITCH,
};
pub use quadrature::{integrate, Integral, QuadratureSpec};
pub use summation::CompensatedSum;
