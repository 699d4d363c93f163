//! Evaluators for Hermite-Hadamard type bounds on the harmonic integral mean
//! (ab/(b−a))∫ₐᵇ f(x)/x² dx and on the trapezoid error
//! (f(a)+f(b))/2 − (ab/(b−a))∫ₐᵇ f(x)/x² dx.
//!
//! Every evaluator returns a [`VerificationReport`] with both sides, the
//! margin and the intermediate values in `details`. None of them verifies
//! its convexity hypothesis; [`check_hypothesis`] does that separately so a
//! violated bound can be told apart from a violated assumption.

use serde::{Deserialize, Serialize};

use crate::coefficients::{lambda123, lambda_coeff, mu12, mu_coeff, nu_coeff};
use crate::convexity::{
    check_am_convex, check_harmonic_am_convex, ConvexityParams, RealFunction, SampleScheme,
    FINITE_DIFFERENCE_NOTE,
};
use crate::error::{Error, Result};
use crate::report::{ReportInputs, VerificationReport};
use crate::specfun::{integrate, QuadratureSpec};

/// Absolute margin tolerance used unless a caller overrides it.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Identifiers of the statements this module evaluates.
pub mod ids {
    pub const CLASSICAL_HH: &str = "eq-1-1";
    pub const HARMONIC_HH: &str = "eq-1-4";
    pub const TRAPEZOID_IDENTITY: &str = "lemma-1-1";
    pub const HARMONIC_POWER_MEAN_BOUND: &str = "thm-1.5";
    pub const HARMONIC_HOLDER_BOUND: &str = "thm-1.6";
    pub const INTEGRAL_MEAN_BOUND: &str = "thm-2.2";
    pub const POWER_MEAN_BOUND: &str = "thm-2.3";
    pub const WEIGHTED_POWER_MEAN_BOUND: &str = "thm-2.4";
    pub const HOLDER_BOUND: &str = "thm-2.5";
}

/// Note attached to weighted power-mean reports.
pub const FIRST_FACTOR_NOTE: &str =
    "first factor uses lambda(0,1;a,b) = int |1-2t| w^-2 dt; detail bound_with_lambda0_q \
     gives the variant with lambda(0,q;a,b) in that factor";

fn check_interval(a: f64, b: f64) -> Result<()> {
    if !(a > 0.0) || !b.is_finite() || !(a < b) {
        return Err(Error::domain(format!(
            "need 0 < a < b < inf, got a = {a}, b = {b}"
        )));
    }
    Ok(())
}

fn check_q(q: f64, strict: bool) -> Result<()> {
    let ok = q.is_finite() && if strict { q > 1.0 } else { q >= 1.0 };
    if !ok {
        let bound = if strict { "q > 1" } else { "q >= 1" };
        return Err(Error::domain(format!(
            "this bound needs {bound}, got q = {q}"
        )));
    }
    Ok(())
}

fn require_domain(f: &RealFunction, points: &[(&str, f64)]) -> Result<()> {
    for &(label, x) in points {
        if !f.domain().contains(x) {
            return Err(Error::domain(format!(
                "{label} = {x} is outside the domain {} of {}",
                f.domain(),
                f.name()
            )));
        }
    }
    Ok(())
}

/// (ab/(b−a))∫ₐᵇ f(x)/x² dx.
pub fn harmonic_integral_mean(f: &RealFunction, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    require_domain(f, &[("a", a), ("b", b)])?;
    let integral = integrate(|x| f.eval(x) / (x * x), a, b, &QuadratureSpec::default())?;
    Ok(a * b / (b - a) * integral.value)
}

/// (1/(b−a))∫ₐᵇ f(x) dx.
pub fn arithmetic_integral_mean(f: &RealFunction, a: f64, b: f64) -> Result<f64> {
    check_interval(a, b)?;
    require_domain(f, &[("a", a), ("b", b)])?;
    let integral = integrate(|x| f.eval(x), a, b, &QuadratureSpec::default())?;
    Ok(integral.value / (b - a))
}

fn double_inequality(
    id: &str,
    left: f64,
    middle: f64,
    right: f64,
    inputs: ReportInputs,
) -> VerificationReport {
    let (lhs, rhs) = if middle - left <= right - middle {
        (left, middle)
    } else {
        (middle, right)
    };
    VerificationReport::new(id, lhs, rhs, DEFAULT_TOLERANCE, inputs)
        .with_detail("left", left)
        .with_detail("middle", middle)
        .with_detail("right", right)
        .with_detail("margin_left", middle - left)
        .with_detail("margin_right", right - middle)
}

/// f((a+b)/2) ≤ (1/(b−a))∫ₐᵇ f ≤ (f(a)+f(b))/2 for convex f.
///
/// The report's lhs/rhs are the pair with the smaller margin; all three
/// terms are in `details`.
pub fn check_classical_hh(f: &RealFunction, a: f64, b: f64) -> Result<VerificationReport> {
    let middle = arithmetic_integral_mean(f, a, b)?;
    let left = f.try_eval(0.5 * (a + b))?;
    let right = 0.5 * (f.try_eval(a)? + f.try_eval(b)?);
    let inputs = ReportInputs::interval(a, b).with_function(f.name());
    Ok(double_inequality(
        ids::CLASSICAL_HH,
        left,
        middle,
        right,
        inputs,
    ))
}

/// f(2ab/(a+b)) ≤ (ab/(b−a))∫ₐᵇ f(x)/x² dx ≤ (f(a)+f(b))/2 for harmonically
/// convex f.
pub fn check_hh_harmonic(f: &RealFunction, a: f64, b: f64) -> Result<VerificationReport> {
    let middle = harmonic_integral_mean(f, a, b)?;
    let left = f.try_eval(2.0 * a * b / (a + b))?;
    let right = 0.5 * (f.try_eval(a)? + f.try_eval(b)?);
    let inputs = ReportInputs::interval(a, b).with_function(f.name());
    Ok(double_inequality(
        ids::HARMONIC_HH,
        left,
        middle,
        right,
        inputs,
    ))
}

/// The trapezoid error and its integral representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapezoidError {
    /// (f(a)+f(b))/2 − (ab/(b−a))∫ₐᵇ f(x)/x² dx.
    pub value: f64,
    /// (ab(b−a)/2)∫₀¹ (1−2t) w⁻² f′(ab/w) dt with w = tb + (1−t)a.
    pub identity: f64,
    /// |value − identity|.
    pub residual: f64,
    pub finite_difference: bool,
}

pub fn trapezoid_error(f: &RealFunction, a: f64, b: f64) -> Result<TrapezoidError> {
    let mean = harmonic_integral_mean(f, a, b)?;
    let value = 0.5 * (f.try_eval(a)? + f.try_eval(b)?) - mean;
    let spec = QuadratureSpec::default().with_breakpoints([0.5]);
    let integral = integrate(
        |t| {
            let w = t * b + (1.0 - t) * a;
            // ab/w can land an ulp outside [a, b] at the endpoints
            let x = (a * b / w).clamp(a, b);
            match f.derivative_at(x) {
                Ok(d) => (1.0 - 2.0 * t) / (w * w) * d.value,
                Err(_) => f64::NAN,
            }
        },
        0.0,
        1.0,
        &spec,
    )?;
    let identity = a * b * (b - a) / 2.0 * integral.value;
    Ok(TrapezoidError {
        value,
        identity,
        residual: (value - identity).abs(),
        finite_difference: !f.has_derivative(),
    })
}

/// The trapezoid-error identity as a residual test: lhs = |residual|, rhs = 0.
pub fn check_trapezoid_identity(f: &RealFunction, a: f64, b: f64) -> Result<VerificationReport> {
    let e = trapezoid_error(f, a, b)?;
    let inputs = ReportInputs::interval(a, b).with_function(f.name());
    let mut report = VerificationReport::new(
        ids::TRAPEZOID_IDENTITY,
        e.residual,
        0.0,
        DEFAULT_TOLERANCE,
        inputs,
    )
    .with_detail("trapezoid_error", e.value)
    .with_detail("identity_integral", e.identity);
    if e.finite_difference {
        report.push_note(FINITE_DIFFERENCE_NOTE);
    }
    Ok(report)
}

struct Slopes {
    at_a: f64,
    at_far: f64,
    finite_difference: bool,
}

fn slopes(f: &RealFunction, a: f64, far: f64) -> Result<Slopes> {
    let da = f.derivative_at(a)?;
    let df = f.derivative_at(far)?;
    Ok(Slopes {
        at_a: da.value.abs(),
        at_far: df.value.abs(),
        finite_difference: da.finite_difference || df.finite_difference,
    })
}

fn flag(mut report: VerificationReport, finite_difference: bool) -> VerificationReport {
    if finite_difference {
        report.push_note(FINITE_DIFFERENCE_NOTE);
    }
    report
}

/// (ab/(b−a))∫ₐᵇ f(x)/x² dx ≤ min{(f(a)+αm f(b/m))/(α+1), (f(b)+αm f(a/m))/(α+1)}
/// for f harmonically (α, m)-convex on (0, ∞).
///
/// Both candidates are in `details`; on a tie the a-anchored one is used.
pub fn check_thm22(
    f: &RealFunction,
    a: f64,
    b: f64,
    alpha: f64,
    m: f64,
) -> Result<VerificationReport> {
    check_interval(a, b)?;
    ConvexityParams::new(alpha, m)?;
    require_domain(f, &[("a", a), ("b", b), ("a/m", a / m), ("b/m", b / m)])?;
    let lhs = harmonic_integral_mean(f, a, b)?;
    let anchored_a = (f.try_eval(a)? + alpha * m * f.try_eval(b / m)?) / (alpha + 1.0);
    let anchored_b = (f.try_eval(b)? + alpha * m * f.try_eval(a / m)?) / (alpha + 1.0);
    let (rhs, which) = if anchored_a <= anchored_b {
        (anchored_a, 1.0)
    } else {
        (anchored_b, 2.0)
    };
    let inputs = ReportInputs::interval(a, b)
        .with_function(f.name())
        .with_alpha(alpha)
        .with_m(m);
    Ok(VerificationReport::new(
        ids::INTEGRAL_MEAN_BOUND,
        lhs,
        rhs,
        DEFAULT_TOLERANCE,
        inputs,
    )
    .with_detail("candidate_a", anchored_a)
    .with_detail("candidate_b", anchored_b)
    .with_detail("binding_candidate", which))
}

fn bound_inputs(f: &RealFunction, a: f64, b: f64, alpha: f64, m: f64, q: f64) -> ReportInputs {
    ReportInputs::interval(a, b)
        .with_function(f.name())
        .with_alpha(alpha)
        .with_m(m)
        .with_q(q)
}

fn bound_setup(
    f: &RealFunction,
    a: f64,
    b: f64,
    alpha: f64,
    m: f64,
) -> Result<(TrapezoidError, Slopes)> {
    check_interval(a, b)?;
    ConvexityParams::new(alpha, m)?;
    require_domain(f, &[("a", a), ("b", b), ("b/m", b / m)])?;
    let e = trapezoid_error(f, a, b)?;
    let s = slopes(f, a, b / m)?;
    Ok((e, s))
}

/// |trapezoid error| ≤ ab(b−a)/2^(2−1/q)·[λ(α,q)|f′(a)|^q + mμ(α,q)|f′(b/m)|^q]^(1/q)
/// for |f′|^q harmonically (α, m)-convex on [a, b/m], q ≥ 1.
pub fn check_thm23(
    f: &RealFunction,
    a: f64,
    b: f64,
    alpha: f64,
    m: f64,
    q: f64,
) -> Result<VerificationReport> {
    check_q(q, false)?;
    let (e, s) = bound_setup(f, a, b, alpha, m)?;
    let lambda = lambda_coeff(alpha, q, a, b)?;
    let mu = mu_coeff(alpha, q, a, b)?;
    let bracket = lambda * s.at_a.powf(q) + m * mu * s.at_far.powf(q);
    let rhs = a * b * (b - a) / 2f64.powf(2.0 - 1.0 / q) * bracket.powf(1.0 / q);
    let report = VerificationReport::new(
        ids::POWER_MEAN_BOUND,
        e.value.abs(),
        rhs,
        DEFAULT_TOLERANCE,
        bound_inputs(f, a, b, alpha, m, q),
    )
    .with_detail("trapezoid_error", e.value)
    .with_detail("lambda", lambda)
    .with_detail("mu", mu)
    .with_detail("abs_fprime_a", s.at_a)
    .with_detail("abs_fprime_b_over_m", s.at_far);
    Ok(flag(report, s.finite_difference || e.finite_difference))
}

/// |trapezoid error| ≤ (ab(b−a)/2)·λ(0,1)^(1−1/q)·[λ(α,1)|f′(a)|^q + mμ(α,1)|f′(b/m)|^q]^(1/q)
/// for |f′|^q harmonically (α, m)-convex on [a, b/m], q ≥ 1.
///
/// The first factor is (∫₀¹|1−2t| w⁻² dt)^(1−1/q), which is what the power
/// mean inequality produces with the weight |1−2t| w⁻². The variant that
/// puts λ(0, q) there instead is reported as `bound_with_lambda0_q`; it is
/// not homogeneous in (a, b) and fails for admissible inputs.
pub fn check_thm24(
    f: &RealFunction,
    a: f64,
    b: f64,
    alpha: f64,
    m: f64,
    q: f64,
) -> Result<VerificationReport> {
    check_q(q, false)?;
    let (e, s) = bound_setup(f, a, b, alpha, m)?;
    let lambda0_1 = lambda_coeff(0.0, 1.0, a, b)?;
    let lambda0_q = lambda_coeff(0.0, q, a, b)?;
    let lambda = lambda_coeff(alpha, 1.0, a, b)?;
    let mu = mu_coeff(alpha, 1.0, a, b)?;
    let bracket = (lambda * s.at_a.powf(q) + m * mu * s.at_far.powf(q)).powf(1.0 / q);
    let scale = a * b * (b - a) / 2.0;
    let rhs = scale * lambda0_1.powf(1.0 - 1.0 / q) * bracket;
    let variant = scale * lambda0_q.powf(1.0 - 1.0 / q) * bracket;
    let report = VerificationReport::new(
        ids::WEIGHTED_POWER_MEAN_BOUND,
        e.value.abs(),
        rhs,
        DEFAULT_TOLERANCE,
        bound_inputs(f, a, b, alpha, m, q),
    )
    .with_detail("trapezoid_error", e.value)
    .with_detail("lambda0_1", lambda0_1)
    .with_detail("lambda0_q", lambda0_q)
    .with_detail("lambda_alpha_1", lambda)
    .with_detail("mu_alpha_1", mu)
    .with_detail("abs_fprime_a", s.at_a)
    .with_detail("abs_fprime_b_over_m", s.at_far)
    .with_detail("bound_with_lambda0_q", variant)
    .with_note(FIRST_FACTOR_NOTE);
    Ok(flag(report, s.finite_difference || e.finite_difference))
}

/// |trapezoid error| ≤ (ab(b−a)/2)(1/(p+1))^(1/p)·
/// (ν(α,q)|f′(a)|^q + m(ν(0,q) − ν(α,q))|f′(b/m)|^q)^(1/q), 1/p + 1/q = 1,
/// for |f′|^q harmonically (α, m)-convex on [a, b/m], q > 1.
pub fn check_thm25(
    f: &RealFunction,
    a: f64,
    b: f64,
    alpha: f64,
    m: f64,
    q: f64,
) -> Result<VerificationReport> {
    check_q(q, true)?;
    let (e, s) = bound_setup(f, a, b, alpha, m)?;
    let p = q / (q - 1.0);
    let nu_alpha = nu_coeff(alpha, q, a, b)?;
    let nu_zero = nu_coeff(0.0, q, a, b)?;
    let sum = nu_alpha * s.at_a.powf(q) + m * (nu_zero - nu_alpha) * s.at_far.powf(q);
    let rhs = a * b * (b - a) / 2.0 * (1.0 / (p + 1.0)).powf(1.0 / p) * sum.powf(1.0 / q);
    let report = VerificationReport::new(
        ids::HOLDER_BOUND,
        e.value.abs(),
        rhs,
        DEFAULT_TOLERANCE,
        bound_inputs(f, a, b, alpha, m, q).with_p(p),
    )
    .with_detail("trapezoid_error", e.value)
    .with_detail("nu_alpha", nu_alpha)
    .with_detail("nu_zero", nu_zero)
    .with_detail("abs_fprime_a", s.at_a)
    .with_detail("abs_fprime_b_over_m", s.at_far);
    Ok(flag(report, s.finite_difference || e.finite_difference))
}

/// |trapezoid error| ≤ (ab(b−a)/2)·λ₁^(1−1/q)·[λ₂|f′(a)|^q + λ₃|f′(b)|^q]^(1/q)
/// for |f′|^q harmonically convex on [a, b], q ≥ 1.
pub fn check_thm15(f: &RealFunction, a: f64, b: f64, q: f64) -> Result<VerificationReport> {
    check_q(q, false)?;
    let (e, s) = bound_setup(f, a, b, 1.0, 1.0)?;
    let [l1, l2, l3] = lambda123(a, b)?;
    let bracket = l2.value * s.at_a.powf(q) + l3.value * s.at_far.powf(q);
    let rhs = a * b * (b - a) / 2.0 * l1.value.powf(1.0 - 1.0 / q) * bracket.powf(1.0 / q);
    let report = VerificationReport::new(
        ids::HARMONIC_POWER_MEAN_BOUND,
        e.value.abs(),
        rhs,
        DEFAULT_TOLERANCE,
        ReportInputs::interval(a, b)
            .with_function(f.name())
            .with_q(q),
    )
    .with_detail("trapezoid_error", e.value)
    .with_detail("lambda1", l1.value)
    .with_detail("lambda2", l2.value)
    .with_detail("lambda3", l3.value)
    .with_detail("abs_fprime_a", s.at_a)
    .with_detail("abs_fprime_b", s.at_far);
    Ok(flag(report, s.finite_difference || e.finite_difference))
}

/// |trapezoid error| ≤ (ab(b−a)/2)(1/(p+1))^(1/p)·(μ₁|f′(a)|^q + μ₂|f′(b)|^q)^(1/q)
/// for |f′|^q harmonically convex on [a, b], q > 1.
pub fn check_thm16(f: &RealFunction, a: f64, b: f64, q: f64) -> Result<VerificationReport> {
    check_q(q, true)?;
    let (e, s) = bound_setup(f, a, b, 1.0, 1.0)?;
    let p = q / (q - 1.0);
    let [m1, m2] = mu12(q, a, b)?;
    let sum = m1.value * s.at_a.powf(q) + m2.value * s.at_far.powf(q);
    let rhs = a * b * (b - a) / 2.0 * (1.0 / (p + 1.0)).powf(1.0 / p) * sum.powf(1.0 / q);
    let report = VerificationReport::new(
        ids::HARMONIC_HOLDER_BOUND,
        e.value.abs(),
        rhs,
        DEFAULT_TOLERANCE,
        ReportInputs::interval(a, b)
            .with_function(f.name())
            .with_q(q)
            .with_p(p),
    )
    .with_detail("trapezoid_error", e.value)
    .with_detail("mu1", m1.value)
    .with_detail("mu2", m2.value)
    .with_detail("abs_fprime_a", s.at_a)
    .with_detail("abs_fprime_b", s.at_far);
    Ok(flag(report, s.finite_difference || e.finite_difference))
}

/// Where a hypothesis is sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HypothesisScope {
    /// The window [a, b/m] the bound actually evaluates.
    Local,
    /// [a/2, 2b/m]. The integral-mean bound assumes convexity on all of
    /// (0, ∞); this is a finite stand-in for that.
    Wide,
}

impl HypothesisScope {
    pub fn window(self, a: f64, b: f64, m: f64) -> (f64, f64) {
        match self {
            HypothesisScope::Local => (a, b / m),
            HypothesisScope::Wide => (0.5 * a, 2.0 * b / m),
        }
    }
}

/// Sample the convexity assumption behind statement `id`.
///
/// Returns `None` for statements with no assumption on f (the identity).
/// The checked function is f itself for the integral-mean statements and
/// |f′|^q for the trapezoid-error bounds.
#[allow(clippy::too_many_arguments)]
pub fn check_hypothesis(
    id: &str,
    f: &RealFunction,
    a: f64,
    b: f64,
    alpha: f64,
    m: f64,
    q: f64,
    scope: HypothesisScope,
    scheme: &SampleScheme,
) -> Result<Option<VerificationReport>> {
    check_interval(a, b)?;
    let (subject, params, m_eff) = match id {
        ids::TRAPEZOID_IDENTITY => return Ok(None),
        ids::CLASSICAL_HH => {
            let (lo, hi) = scope.window(a, b, 1.0);
            let g = f.restricted(lo, hi)?;
            return check_am_convex(&g, ConvexityParams::new(1.0, 1.0)?, scheme).map(Some);
        }
        ids::HARMONIC_HH => (f.clone(), ConvexityParams::new(1.0, 1.0)?, 1.0),
        ids::INTEGRAL_MEAN_BOUND => (f.clone(), ConvexityParams::new(alpha, m)?, m),
        ids::HARMONIC_POWER_MEAN_BOUND | ids::HARMONIC_HOLDER_BOUND => (
            f.abs_derivative_pow(q),
            ConvexityParams::new(1.0, 1.0)?,
            1.0,
        ),
        ids::POWER_MEAN_BOUND | ids::WEIGHTED_POWER_MEAN_BOUND | ids::HOLDER_BOUND => {
            (f.abs_derivative_pow(q), ConvexityParams::new(alpha, m)?, m)
        }
        other => {
            return Err(Error::Usage(format!(
                "no hypothesis is defined for '{other}'"
            )))
        }
    };
    let (lo, hi) = scope.window(a, b, m_eff);
    let g = subject.restricted(lo, hi)?;
    let mut report = check_harmonic_am_convex(&g, params, scheme)?;
    if !f.has_derivative() && subject.name() != f.name() {
        report.push_note(FINITE_DIFFERENCE_NOTE);
    }
    Ok(Some(report))
}
