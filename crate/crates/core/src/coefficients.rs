//! Coefficient families of the trapezoid-error bounds.
//!
//! Writing w(t) = tb + (1−t)a for 0 < a < b:
//!
//! | name | defining integral |
//! |------|-------------------|
//! | λ(α, q) | ∫₀¹ \|1−2t\| t^α w^(−2q) dt |
//! | μ(α, q) | ∫₀¹ \|1−2t\| (1−t^α) w^(−2q) dt = λ(0, q) − λ(α, q) |
//! | ν(α, q) | ∫₀¹ t^α w^(−2q) dt |
//! | λ₁ | ∫₀¹ \|1−2t\| w^(−2) dt |
//! | λ₂ | ∫₀¹ \|1−2t\| t w^(−2) dt |
//! | λ₃ | ∫₀¹ \|1−2t\| (1−t) w^(−2) dt = λ₁ − λ₂ |
//! | μ₁(q) | ∫₀¹ t w^(−2q) dt |
//! | μ₂(q) | ∫₀¹ (1−t) w^(−2q) dt |
//!
//! Each closed form has an `_oracle` twin that integrates the defining
//! integral directly, so the two can be compared at any point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{
    beta, gauss_2f1, integrate, CompensatedSum, HypergeometricArgs, QuadratureSpec,
};

/// Relative agreement required between a closed form and its oracle.
pub const ORACLE_AGREEMENT: f64 = 1e-8;

/// Below b − a < `NEAR_DEGENERATE`·a the oracle stands in for the
/// logarithmic forms of λ₁–λ₃ and the rational forms of μ₁, μ₂.
pub const NEAR_DEGENERATE: f64 = 1e-6;

const ORACLE_REL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    QuadratureOracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::QuadratureOracle => "quadrature-oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientName {
    Lambda,
    Mu,
    Nu,
    Lambda1,
    Lambda2,
    Lambda3,
    Mu1,
    Mu2,
}

impl fmt::Display for CoefficientName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientName::Lambda => "lambda",
            CoefficientName::Mu => "mu",
            CoefficientName::Nu => "nu",
            CoefficientName::Lambda1 => "lambda1",
            CoefficientName::Lambda2 => "lambda2",
            CoefficientName::Lambda3 => "lambda3",
            CoefficientName::Mu1 => "mu1",
            CoefficientName::Mu2 => "mu2",
        })
    }
}

/// A coefficient value together with its arguments and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Coefficient {
    pub name: CoefficientName,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    pub a: f64,
    pub b: f64,
    pub value: f64,
    pub provenance: Provenance,
}

/// A closed-form value next to its oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub closed_form: f64,
    pub oracle: f64,
    /// |closed − oracle| / max(1, |closed|).
    pub rel_diff: f64,
    /// `rel_diff` ≤ [`ORACLE_AGREEMENT`]. A `false` here is a discrepancy
    /// between the formula and its defining integral and is reported as such.
    pub agrees: bool,
}

impl OracleComparison {
    pub fn new(closed_form: f64, oracle: f64) -> Self {
        let rel_diff = (closed_form - oracle).abs() / closed_form.abs().max(1.0);
        Self {
            closed_form,
            oracle,
            rel_diff,
            agrees: rel_diff <= ORACLE_AGREEMENT,
        }
    }
}

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0) || !b.is_finite() || !(a < b) {
        return Err(Error::domain(format!(
            "coefficients need 0 < a < b, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

fn check_alpha_q(alpha: f64, q: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::domain(format!(
            "alpha must lie in [0, 1], got {alpha}"
        )));
    }
    if !(q >= 1.0) || !q.is_finite() {
        return Err(Error::domain(format!(
            "q must be a finite number >= 1, got {q}"
        )));
    }
    Ok(())
}

fn check_q_above_one(q: f64) -> Result<()> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(Error::domain(format!(
            "q must exceed 1: the factor (1 - q) in the denominator vanishes at q = 1, got q = {q}"
        )));
    }
    Ok(())
}

fn near_degenerate(a: f64, b: f64) -> bool {
    b - a < NEAR_DEGENERATE * a
}

/// ln((a+b)²/(4ab)) = ln(1 + (b−a)²/(4ab)), computed without cancellation.
/// u − ln(1 + u) with u = (b − a)²/(4ab), so ln((a + b)²/(4ab)) = u − r.
///
/// Written out this way the logarithmic forms of λ₁–λ₃ split into 1/(kab)
/// plus a term in r with no cancellation left, however close a and b are.
fn log_remainder(a: f64, b: f64) -> f64 {
    let d = b - a;
    let u = d * d / (4.0 * a * b);
    if u >= 1.0 {
        return u - u.ln_1p();
    }
    // ln(1 + u) = 2 atanh(z) with z = u/(2 + u), and u − 2z = 2z²/(1 − z)
    let z = u / (2.0 + u);
    let z2 = z * z;
    let mut sum = CompensatedSum::new();
    sum.add(2.0 * z2 / (1.0 - z));
    let mut power = z;
    for k in 1..64 {
        power *= z2;
        let term = 2.0 * power / (2 * k + 1) as f64;
        sum.add(-term);
        if term < 1e-18 * sum.value() {
            break;
        }
    }
    sum.value()
}

fn f21(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    gauss_2f1(HypergeometricArgs::new(a, b, c, z))
}

fn oracle(integrand: impl Fn(f64) -> f64, kink: bool) -> Result<f64> {
    let mut spec = QuadratureSpec::relative(ORACLE_REL_TOL);
    if kink {
        spec = spec.with_breakpoints([0.5]);
    }
    Ok(integrate(integrand, 0.0, 1.0, &spec)?.value)
}

/// λ(α, q; a, b) from its three-term Beta/₂F₁ expression.
pub fn lambda_coeff(alpha: f64, q: f64, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    check_alpha_q(alpha, q)?;
    let z = 1.0 - a / b;
    let z_mid = (b - a) / (a + b);
    let scale = b.powf(-2.0 * q);
    let b12 = beta(1.0, alpha + 2.0)?;
    let b21 = beta(2.0, alpha + 1.0)?;
    let first = b12 * scale * f21(2.0 * q, 1.0, alpha + 3.0, z)?;
    let second = b21 * scale * f21(2.0 * q, 2.0, alpha + 3.0, z)?;
    let third = 2f64.powf(2.0 * q - alpha)
        * b21
        * (a + b).powf(-2.0 * q)
        * f21(2.0 * q, 2.0, alpha + 3.0, z_mid)?;
    Ok(first - second + third)
}

/// μ(α, q; a, b) = λ(0, q; a, b) − λ(α, q; a, b).
pub fn mu_coeff(alpha: f64, q: f64, a: f64, b: f64) -> Result<f64> {
    check_alpha_q(alpha, q)?;
    if alpha == 0.0 {
        check_interval(a, b)?;
        return Ok(0.0);
    }
    Ok(lambda_coeff(0.0, q, a, b)? - lambda_coeff(alpha, q, a, b)?)
}

/// ν(α, q; a, b) = β(1, α+1) b^(−2q) ₂F₁(2q, 1; α+2; 1 − a/b).
pub fn nu_coeff(alpha: f64, q: f64, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    check_alpha_q(alpha, q)?;
    Ok(beta(1.0, alpha + 1.0)? * b.powf(-2.0 * q) * f21(2.0 * q, 1.0, alpha + 2.0, 1.0 - a / b)?)
}

pub fn lambda_coeff_oracle(alpha: f64, q: f64, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    check_alpha_q(alpha, q)?;
    oracle(
        |t| (1.0 - 2.0 * t).abs() * t.powf(alpha) * (t * b + (1.0 - t) * a).powf(-2.0 * q),
        true,
    )
}

pub fn mu_coeff_oracle(alpha: f64, q: f64, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    check_alpha_q(alpha, q)?;
    oracle(
        |t| (1.0 - 2.0 * t).abs() * (1.0 - t.powf(alpha)) * (t * b + (1.0 - t) * a).powf(-2.0 * q),
        true,
    )
}

pub fn nu_coeff_oracle(alpha: f64, q: f64, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    check_alpha_q(alpha, q)?;
    oracle(
        |t| t.powf(alpha) * (t * b + (1.0 - t) * a).powf(-2.0 * q),
        false,
    )
}

fn make(name: CoefficientName, a: f64, b: f64, value: f64, provenance: Provenance) -> Coefficient {
    Coefficient {
        name,
        alpha: None,
        q: None,
        a,
        b,
        value,
        provenance,
    }
}

/// (λ₁, λ₂, λ₃) from their logarithmic closed forms, with λ₃ = λ₁ − λ₂.
///
/// λ₁ = 1/(ab) − 2/(b−a)²·L and λ₂ = −1/(b(b−a)) + (3a+b)/(b−a)³·L with
/// L = ln((a+b)²/(4ab)), evaluated in the cancellation-free arrangement of
/// [`log_remainder`]. For nearly equal endpoints the oracle values are
/// returned instead and tagged [`Provenance::QuadratureOracle`].
pub fn lambda123(a: f64, b: f64) -> Result<[Coefficient; 3]> {
    check_interval(a, b)?;
    if near_degenerate(a, b) {
        return lambda123_oracle(a, b);
    }
    let d = b - a;
    let r = log_remainder(a, b);
    let l1 = 0.5 / (a * b) + 2.0 * r / (d * d);
    let l2 = 0.25 / (a * b) - (3.0 * a + b) * r / (d * d * d);
    let p = Provenance::ClosedForm;
    Ok([
        make(CoefficientName::Lambda1, a, b, l1, p),
        make(CoefficientName::Lambda2, a, b, l2, p),
        make(CoefficientName::Lambda3, a, b, l1 - l2, p),
    ])
}

/// λ₃ from its own logarithmic form, 1/(a(b−a)) − (3b+a)/(b−a)³·ln((a+b)²/(4ab)),
/// as an independent check on λ₁ − λ₂.
pub fn lambda3_direct(a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    let d = b - a;
    Ok(0.25 / (a * b) + (3.0 * b + a) * log_remainder(a, b) / (d * d * d))
}

pub fn lambda123_oracle(a: f64, b: f64) -> Result<[Coefficient; 3]> {
    check_interval(a, b)?;
    let w2 = |t: f64| (t * b + (1.0 - t) * a).powi(-2);
    let l1 = oracle(|t| (1.0 - 2.0 * t).abs() * w2(t), true)?;
    let l2 = oracle(|t| (1.0 - 2.0 * t).abs() * t * w2(t), true)?;
    let l3 = oracle(|t| (1.0 - 2.0 * t).abs() * (1.0 - t) * w2(t), true)?;
    let p = Provenance::QuadratureOracle;
    Ok([
        make(CoefficientName::Lambda1, a, b, l1, p),
        make(CoefficientName::Lambda2, a, b, l2, p),
        make(CoefficientName::Lambda3, a, b, l3, p),
    ])
}

/// (μ₁, μ₂) for q > 1 from their rational closed forms.
///
/// Falls back to the oracle for nearly equal endpoints, as [`lambda123`] does.
pub fn mu12(q: f64, a: f64, b: f64) -> Result<[Coefficient; 2]> {
    check_interval(a, b)?;
    check_q_above_one(q)?;
    if near_degenerate(a, b) {
        return mu12_oracle(q, a, b);
    }
    let d = b - a;
    let den = 2.0 * d * d * (1.0 - q) * (1.0 - 2.0 * q);
    let m1 = (a.powf(2.0 - 2.0 * q) + b.powf(1.0 - 2.0 * q) * (d * (1.0 - 2.0 * q) - a)) / den;
    let m2 = (b.powf(2.0 - 2.0 * q) - a.powf(1.0 - 2.0 * q) * (d * (1.0 - 2.0 * q) + b)) / den;
    let mut out = [
        make(CoefficientName::Mu1, a, b, m1, Provenance::ClosedForm),
        make(CoefficientName::Mu2, a, b, m2, Provenance::ClosedForm),
    ];
    for c in &mut out {
        c.q = Some(q);
    }
    Ok(out)
}

pub fn mu12_oracle(q: f64, a: f64, b: f64) -> Result<[Coefficient; 2]> {
    check_interval(a, b)?;
    check_q_above_one(q)?;
    let w = |t: f64| (t * b + (1.0 - t) * a).powf(-2.0 * q);
    let m1 = oracle(|t| t * w(t), false)?;
    let m2 = oracle(|t| (1.0 - t) * w(t), false)?;
    let p = Provenance::QuadratureOracle;
    let mut out = [
        make(CoefficientName::Mu1, a, b, m1, p),
        make(CoefficientName::Mu2, a, b, m2, p),
    ];
    for c in &mut out {
        c.q = Some(q);
    }
    Ok(out)
}

/// Evaluate one of the (α, q)-indexed families by name.
pub fn family(name: CoefficientName, alpha: f64, q: f64, a: f64, b: f64) -> Result<Coefficient> {
    let value = match name {
        CoefficientName::Lambda => lambda_coeff(alpha, q, a, b)?,
        CoefficientName::Mu => mu_coeff(alpha, q, a, b)?,
        CoefficientName::Nu => nu_coeff(alpha, q, a, b)?,
        other => {
            return Err(Error::Usage(format!(
                "{other} is not indexed by (alpha, q); use lambda123 or mu12"
            )))
        }
    };
    Ok(Coefficient {
        name,
        alpha: Some(alpha),
        q: Some(q),
        a,
        b,
        value,
        provenance: Provenance::ClosedForm,
    })
}

/// The oracle twin of [`family`].
pub fn family_oracle(
    name: CoefficientName,
    alpha: f64,
    q: f64,
    a: f64,
    b: f64,
) -> Result<Coefficient> {
    let value = match name {
        CoefficientName::Lambda => lambda_coeff_oracle(alpha, q, a, b)?,
        CoefficientName::Mu => mu_coeff_oracle(alpha, q, a, b)?,
        CoefficientName::Nu => nu_coeff_oracle(alpha, q, a, b)?,
        other => {
            return Err(Error::Usage(format!(
                "{other} is not indexed by (alpha, q); use lambda123 or mu12"
            )))
        }
    };
    Ok(Coefficient {
        name,
        alpha: Some(alpha),
        q: Some(q),
        a,
        b,
        value,
        provenance: Provenance::QuadratureOracle,
    })
}
