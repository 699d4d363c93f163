use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{beta, integrate, CompensatedSum, QuadratureSpec};

/// |z| at or below which [`gauss_2f1`] sums the power series; above it the
/// Euler integral representation is integrated numerically.
pub const SERIES_SWITCH: f64 = 0.5;

const MAX_SERIES_TERMS: usize = 20_000;

/// Arguments of ₂F₁(a, b; c; z).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HypergeometricArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
}

impl HypergeometricArgs {
    pub fn new(a: f64, b: f64, c: f64, z: f64) -> Self {
        Self { a, b, c, z }
    }

    fn check_integral_domain(&self) -> Result<()> {
        let Self { a, b, c, z } = *self;
        if ![a, b, c, z].iter().all(|v| v.is_finite()) {
            return Err(Error::domain(format!(
                "2F1 arguments must be finite: {self:?}"
            )));
        }
        if !(b > 0.0) || !(c > b) {
            return Err(Error::domain(format!(
                "2F1 requires c > b > 0, got b = {b}, c = {c}"
            )));
        }
        if !(z.abs() < 1.0) {
            return Err(Error::domain(format!("2F1 requires |z| < 1, got z = {z}")));
        }
        Ok(())
    }
}

/// Gauss hypergeometric function for c > b > 0 and |z| < 1.
///
/// Uses [`gauss_2f1_series`] when |z| ≤ [`SERIES_SWITCH`] and
/// [`gauss_2f1_integral`] otherwise.
pub fn gauss_2f1(args: HypergeometricArgs) -> Result<f64> {
    args.check_integral_domain()?;
    if args.z.abs() <= SERIES_SWITCH {
        gauss_2f1_series(args)
    } else {
        gauss_2f1_integral(args)
    }
}

/// Power series Σ (a)ₙ(b)ₙ/((c)ₙ n!) zⁿ with compensated summation.
///
/// Terminates once the geometric bound on the remaining tail falls below
/// half an ulp of the partial sum.
pub fn gauss_2f1_series(args: HypergeometricArgs) -> Result<f64> {
    let HypergeometricArgs { a, b, c, z } = args;
    if ![a, b, c, z].iter().all(|v| v.is_finite()) {
        return Err(Error::domain(format!(
            "2F1 arguments must be finite: {args:?}"
        )));
    }
    if !(z.abs() < 1.0) {
        return Err(Error::domain(format!(
            "2F1 series requires |z| < 1, got z = {z}"
        )));
    }
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::domain(format!("2F1 is undefined for c = {c}")));
    }
    if z == 0.0 {
        return Ok(1.0);
    }

    let mut sum = CompensatedSum::new();
    sum.add(1.0);
    let mut term = 1.0f64;
    for n in 0..MAX_SERIES_TERMS {
        let k = n as f64;
        let ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0));
        term *= ratio * z;
        sum.add(term);
        if term == 0.0 {
            return Ok(sum.value());
        }

        // Bound the tail by a geometric series in the next ratio.
        let next = ((a + k + 1.0) * (b + k + 1.0) / ((c + k + 1.0) * (k + 2.0)) * z).abs();
        let r = next.max(z.abs());
        if r < 1.0 {
            let tail = term.abs() * r / (1.0 - r);
            if tail <= 0.5 * f64::EPSILON * sum.value().abs() {
                return Ok(sum.value());
            }
        }
    }
    Err(Error::Accuracy {
        context: format!("2F1 series did not converge in {MAX_SERIES_TERMS} terms for {args:?}"),
        estimate: sum.value(),
        achieved_error: term.abs(),
    })
}

/// Euler integral representation
/// ₂F₁(a,b;c;z) = 1/β(b, c−b) ∫₀¹ t^(b−1) (1−t)^(c−b−1) (1−zt)^(−a) dt.
///
/// The integral is split at t = 1/2 and the upper half is rewritten in
/// s = 1 − t, so that both possible endpoint singularities sit at the
/// origin where bisection can resolve them.
pub fn gauss_2f1_integral(args: HypergeometricArgs) -> Result<f64> {
    args.check_integral_domain()?;
    let HypergeometricArgs { a, b, c, z } = args;
    let norm = beta(b, c - b)?;
    let p = b - 1.0;
    let q = c - b - 1.0;
    let one_minus_z = 1.0 - z;
    let spec = QuadratureSpec::relative(1e-12);

    let lower = integrate(
        |t: f64| t.powf(p) * (1.0 - t).powf(q) * (1.0 - z * t).powf(-a),
        0.0,
        0.5,
        &spec,
    )?;
    let upper = integrate(
        |s: f64| s.powf(q) * (1.0 - s).powf(p) * (one_minus_z + z * s).powf(-a),
        0.0,
        0.5,
        &spec,
    )?;
    Ok((lower.value + upper.value) / norm)
}
