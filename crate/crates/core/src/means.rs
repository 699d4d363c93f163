//! Two-point means and the mean inequalities obtained by applying the
//! trapezoid and integral-mean bounds to power functions.

use serde::{Deserialize, Serialize};

use crate::convexity::{Domain, Monotonicity, RealFunction};
use crate::error::{Error, Result};
use crate::inequalities::{
    check_thm22, check_thm23, check_thm24, check_thm25, harmonic_integral_mean, DEFAULT_TOLERANCE,
};
use crate::report::{ReportInputs, VerificationReport};

pub mod ids {
    pub const POWER_INTEGRAL_MEAN: &str = "prop-3.1";
    pub const POWER_MEAN_TRAPEZOID: &str = "prop-3.2";
    pub const WEIGHTED_POWER_MEAN_TRAPEZOID: &str = "prop-3.3";
    pub const HOLDER_TRAPEZOID: &str = "prop-3.4";
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeanKind {
    /// w·a + (1−w)·b.
    WeightedArithmetic {
        w: f64,
    },
    Arithmetic,
    Geometric,
    Harmonic,
    /// ((b^(p+1) − a^(p+1)) / ((p+1)(b−a)))^(1/p), p ∉ {−1, 0}.
    Logarithmic {
        p: f64,
    },
}

fn check_pair(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0) || !b.is_finite() || !(a <= b) {
        return Err(Error::domain(format!(
            "means need 0 < a <= b < inf, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

fn check_strict(a: f64, b: f64) -> Result<()> {
    check_pair(a, b)?;
    if a == b {
        return Err(Error::domain(format!("need a < b, got a = b = {a}")));
    }
    Ok(())
}

/// L_p(a, b)^p = (b^(p+1) − a^(p+1)) / ((p+1)(b−a)), evaluated through
/// expm1 so that nearby endpoints do not cancel.
pub fn logarithmic_mean_power(p: f64, a: f64, b: f64) -> Result<f64> {
    check_pair(a, b)?;
    if !p.is_finite() || p == 0.0 || p == -1.0 {
        return Err(Error::domain(format!(
            "L_p is undefined for p = {p}; p must avoid -1 and 0"
        )));
    }
    if a == b {
        return Ok(a.powf(p));
    }
    let r = ((b - a) / a).ln_1p();
    Ok(a.powf(p + 1.0) * ((p + 1.0) * r).exp_m1() / ((p + 1.0) * (b - a)))
}

pub fn mean(kind: MeanKind, a: f64, b: f64) -> Result<f64> {
    check_pair(a, b)?;
    Ok(match kind {
        MeanKind::WeightedArithmetic { w } => {
            if !(0.0..=1.0).contains(&w) {
                return Err(Error::domain(format!("weight must lie in [0, 1], got {w}")));
            }
            w * a + (1.0 - w) * b
        }
        MeanKind::Arithmetic => 0.5 * (a + b),
        MeanKind::Geometric => (a * b).sqrt(),
        MeanKind::Harmonic => 2.0 * a * b / (a + b),
        MeanKind::Logarithmic { p } => logarithmic_mean_power(p, a, b)?.powf(1.0 / p),
    })
}

/// w·x + (1−w)·y without the ordering requirement of [`mean`].
fn weighted(w: f64, x: f64, y: f64) -> f64 {
    w * x + (1.0 - w) * y
}

fn check_alpha_open(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0, 1), got {alpha}"
        )));
    }
    Ok(())
}

/// x^s / s with derivative x^(s−1).
pub fn scaled_power(s: f64) -> RealFunction {
    RealFunction::new(format!("x^{s}/{s}"), Domain::POSITIVE, move |x| {
        x.powf(s) / s
    })
    .with_derivative(move |x| x.powf(s - 1.0))
    .with_params(vec![s])
    .with_monotonicity(Monotonicity::Nondecreasing)
}

/// G²·L_(α−2)^(α−2) ≤ min{A_(1/(α+1))(a^α, b^α), A_(1/(α+1))(b^α, a^α)}, 0 < α < 1.
///
/// This is the integral-mean bound with m = 1 applied to x^α. The lhs is
/// cross-checked against the harmonic integral mean of x^α, and the
/// integral-mean evaluator's rhs is recorded next to the one computed here.
pub fn check_prop31(a: f64, b: f64, alpha: f64) -> Result<VerificationReport> {
    check_strict(a, b)?;
    check_alpha_open(alpha)?;
    let g2 = a * b;
    let lhs = g2 * logarithmic_mean_power(alpha - 2.0, a, b)?;
    let (aa, ba) = (a.powf(alpha), b.powf(alpha));
    let w = 1.0 / (alpha + 1.0);
    let first = weighted(w, aa, ba);
    let second = weighted(w, ba, aa);
    let rhs = if first <= second { first } else { second };

    let f = RealFunction::pow(alpha);
    let integral_mean = harmonic_integral_mean(&f, a, b)?;
    let via_bound = check_thm22(&f, a, b, alpha, 1.0)?;
    let inputs = ReportInputs::interval(a, b).with_alpha(alpha);
    Ok(VerificationReport::new(
        ids::POWER_INTEGRAL_MEAN,
        lhs,
        rhs,
        DEFAULT_TOLERANCE,
        inputs,
    )
    .with_detail("candidate_a", first)
    .with_detail("candidate_b", second)
    .with_detail("harmonic_integral_mean", integral_mean)
    .with_detail("integral_mean_bound_rhs", via_bound.rhs))
}

struct PowerCase {
    s: f64,
    lhs: f64,
    inputs: ReportInputs,
}

/// |A(a^s, b^s) − G²L_(s−2)^(s−2)| with s = α/q + 1.
fn power_case(a: f64, b: f64, alpha: f64, q: f64, strict_q: bool) -> Result<PowerCase> {
    check_strict(a, b)?;
    check_alpha_open(alpha)?;
    let q_ok = q.is_finite() && if strict_q { q > 1.0 } else { q >= 1.0 };
    if !q_ok {
        let need = if strict_q { "q > 1" } else { "q >= 1" };
        return Err(Error::domain(format!(
            "this inequality needs {need}, got q = {q}"
        )));
    }
    let s = alpha / q + 1.0;
    let arith = 0.5 * (a.powf(s) + b.powf(s));
    let lhs = (arith - a * b * logarithmic_mean_power(s - 2.0, a, b)?).abs();
    Ok(PowerCase {
        s,
        lhs,
        inputs: ReportInputs::interval(a, b).with_alpha(alpha).with_q(q),
    })
}

fn from_bound(id: &str, case: PowerCase, bound: &VerificationReport) -> VerificationReport {
    // f = x^s/s has f′ = x^(s−1) and |f′|^q = x^α; the trapezoid error of f
    // is the lhs divided by s
    VerificationReport::new(
        id,
        case.lhs,
        case.s * bound.rhs,
        DEFAULT_TOLERANCE,
        case.inputs,
    )
    .with_detail("exponent", case.s)
    .with_detail("pipeline_lhs", case.s * bound.lhs)
    .with_detail("trapezoid_bound", bound.rhs)
}

/// |A(a^s, b^s) − G²L_(s−2)^(s−2)| ≤ (ab(b−a)(α+q)/(q·2^(2−1/q)))·[λ(α,q)a^α + μ(α,q)b^α]^(1/q)
/// with s = α/q + 1, q ≥ 1, 0 < α < 1.
pub fn check_prop32(a: f64, b: f64, alpha: f64, q: f64) -> Result<VerificationReport> {
    let case = power_case(a, b, alpha, q, false)?;
    let bound = check_thm23(&scaled_power(case.s), a, b, alpha, 1.0, q)?;
    Ok(from_bound(ids::POWER_MEAN_TRAPEZOID, case, &bound)
        .with_detail("lambda", bound.detail("lambda").unwrap_or(f64::NAN))
        .with_detail("mu", bound.detail("mu").unwrap_or(f64::NAN)))
}

/// |A(a^s, b^s) − G²L_(s−2)^(s−2)| ≤ (ab(b−a)(α+q)/(2q))·λ(0,1)^(1−1/q)·[λ(α,1)a^α + μ(α,1)b^α]^(1/q)
/// with s = α/q + 1, q ≥ 1, 0 < α < 1.
///
/// As in [`check_thm24`], `bound_with_lambda0_q` carries the variant with
/// λ(0, q) in the first factor.
pub fn check_prop33(a: f64, b: f64, alpha: f64, q: f64) -> Result<VerificationReport> {
    let case = power_case(a, b, alpha, q, false)?;
    let s = case.s;
    let bound = check_thm24(&scaled_power(s), a, b, alpha, 1.0, q)?;
    let variant = bound.detail("bound_with_lambda0_q").unwrap_or(f64::NAN);
    let mut report = from_bound(ids::WEIGHTED_POWER_MEAN_TRAPEZOID, case, &bound)
        .with_detail("bound_with_lambda0_q", s * variant);
    for note in &bound.notes {
        report.push_note(note.clone());
    }
    Ok(report)
}

/// |A(a^s, b^s) − G²L_(s−2)^(s−2)| ≤ (ab(b−a)(α+q)/(2q))(1/(p+1))^(1/p)·(ν(α,q)a^α + (ν(0,q) − ν(α,q))b^α)^(1/q)
/// with s = α/q + 1, q > 1, 1/p + 1/q = 1, 0 < α < 1.
pub fn check_prop34(a: f64, b: f64, alpha: f64, q: f64, p: f64) -> Result<VerificationReport> {
    let case = power_case(a, b, alpha, q, true)?;
    if !((1.0 / p + 1.0 / q - 1.0).abs() <= 1e-12) {
        return Err(Error::domain(format!(
            "p and q must be conjugate (1/p + 1/q = 1), got p = {p}, q = {q}"
        )));
    }
    let bound = check_thm25(&scaled_power(case.s), a, b, alpha, 1.0, q)?;
    let mut report = from_bound(ids::HOLDER_TRAPEZOID, case, &bound);
    report.inputs.p = Some(p);
    Ok(report)
}

/// The conjugate exponent q/(q−1).
pub fn conjugate(q: f64) -> Result<f64> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(Error::domain(format!(
            "a conjugate exponent needs q > 1, got {q}"
        )));
    }
    Ok(q / (q - 1.0))
}
