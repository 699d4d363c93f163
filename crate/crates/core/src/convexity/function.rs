use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

type Map = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An interval of the positive half-line. `hi` may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Domain {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Domain {
    /// The open half-line (0, ∞).
    pub const POSITIVE: Domain = Domain {
        lo: 0.0,
        hi: f64::INFINITY,
        lo_closed: false,
        hi_closed: false,
    };

    pub fn closed(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0) || !(lo <= hi) || !hi.is_finite() {
            return Err(Error::domain(format!(
                "a closed sampling domain needs 0 < lo <= hi < inf, got [{lo}, {hi}]"
            )));
        }
        Ok(Domain {
            lo,
            hi,
            lo_closed: true,
            hi_closed: true,
        })
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed {
            x >= self.lo
        } else {
            x > self.lo
        };
        let below = if self.hi_closed {
            x <= self.hi
        } else {
            x < self.hi
        };
        above && below
    }

    pub fn contains_interval(&self, lo: f64, hi: f64) -> bool {
        self.contains(lo) && self.contains(hi)
    }

    pub fn is_bounded_closed(&self) -> bool {
        self.lo_closed && self.hi_closed && self.hi.is_finite()
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Nondecreasing,
    Nonincreasing,
    Unknown,
}

/// A scalar function on a positive interval with an optional analytic derivative.
#[derive(Clone)]
pub struct RealFunction {
    name: String,
    params: Vec<f64>,
    eval: Map,
    derivative: Option<Map>,
    domain: Domain,
    monotonicity: Monotonicity,
}

impl fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealFunction")
            .field("name", &self.name)
            .field("params", &self.params)
            .field("domain", &self.domain)
            .field("analytic_derivative", &self.derivative.is_some())
            .finish()
    }
}

/// Derivative value and whether it came from the finite-difference fallback.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivativeValue {
    pub value: f64,
    pub finite_difference: bool,
}

pub const FINITE_DIFFERENCE_NOTE: &str = "derivative via finite differences";

impl RealFunction {
    pub fn new<F>(name: impl Into<String>, domain: Domain, eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            params: Vec::new(),
            eval: Arc::new(eval),
            derivative: None,
            domain,
            monotonicity: Monotonicity::Unknown,
        }
    }

    pub fn with_derivative<F>(mut self, derivative: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    pub fn with_params(mut self, params: Vec<f64>) -> Self {
        self.params = params;
        self
    }

    pub fn with_monotonicity(mut self, monotonicity: Monotonicity) -> Self {
        self.monotonicity = monotonicity;
        self
    }

    /// x ↦ x^s on (0, ∞).
    pub fn pow(s: f64) -> Self {
        let monotonicity = if s >= 0.0 {
            Monotonicity::Nondecreasing
        } else {
            Monotonicity::Nonincreasing
        };
        RealFunction::new(format!("pow:{s}"), Domain::POSITIVE, move |x: f64| {
            x.powf(s)
        })
        .with_derivative(move |x: f64| if s == 0.0 { 0.0 } else { s * x.powf(s - 1.0) })
        .with_params(vec![s])
        .with_monotonicity(monotonicity)
    }

    pub fn square() -> Self {
        RealFunction::new("square", Domain::POSITIVE, |x| x * x)
            .with_derivative(|x| 2.0 * x)
            .with_monotonicity(Monotonicity::Nondecreasing)
    }

    pub fn identity() -> Self {
        RealFunction::new("identity", Domain::POSITIVE, |x| x)
            .with_derivative(|_| 1.0)
            .with_monotonicity(Monotonicity::Nondecreasing)
    }

    pub fn neg_identity() -> Self {
        RealFunction::new("neg-identity", Domain::POSITIVE, |x| -x)
            .with_derivative(|_| -1.0)
            .with_monotonicity(Monotonicity::Nonincreasing)
    }

    pub fn log() -> Self {
        RealFunction::new("log", Domain::POSITIVE, f64::ln)
            .with_derivative(|x| 1.0 / x)
            .with_monotonicity(Monotonicity::Nondecreasing)
    }

    pub fn exp() -> Self {
        RealFunction::new("exp", Domain::POSITIVE, f64::exp)
            .with_derivative(f64::exp)
            .with_monotonicity(Monotonicity::Nondecreasing)
    }

    pub fn constant(c: f64) -> Self {
        RealFunction::new(format!("const:{c}"), Domain::POSITIVE, move |_| c)
            .with_derivative(|_| 0.0)
            .with_params(vec![c])
            .with_monotonicity(Monotonicity::Nondecreasing)
    }

    /// Parse a registry address: `pow:s`, `square`, `identity`,
    /// `neg-identity`, `log`, `exp` or `const:c`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let number = |raw: &str| -> Result<f64> {
            raw.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Usage(format!("bad numeric parameter in function '{spec}'")))
        };
        if let Some(rest) = spec.strip_prefix("pow:") {
            return Ok(RealFunction::pow(number(rest)?));
        }
        if let Some(rest) = spec.strip_prefix("const:") {
            return Ok(RealFunction::constant(number(rest)?));
        }
        match spec {
            "square" => Ok(RealFunction::square()),
            "identity" => Ok(RealFunction::identity()),
            "neg-identity" => Ok(RealFunction::neg_identity()),
            "log" => Ok(RealFunction::log()),
            "exp" => Ok(RealFunction::exp()),
            other => Err(Error::Usage(format!("unknown function '{other}'"))),
        }
    }

    /// Registry names, for help text.
    pub const REGISTRY: [&'static str; 7] = [
        "pow:s",
        "square",
        "identity",
        "neg-identity",
        "log",
        "exp",
        "const:c",
    ];

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    pub fn has_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    /// Evaluate without domain checks.
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// Evaluate, rejecting points outside the domain and non-finite values.
    pub fn try_eval(&self, x: f64) -> Result<f64> {
        if !self.domain.contains(x) {
            return Err(Error::domain(format!(
                "{} evaluated at x = {x}, outside its domain {}",
                self.name, self.domain
            )));
        }
        let y = self.eval(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Evaluation { at: x, value: y })
        }
    }

    /// f′(x): the analytic derivative when registered, otherwise a central
    /// difference with step ε^(1/3)·max(1, |x|), one-sided at a domain edge.
    pub fn derivative_at(&self, x: f64) -> Result<DerivativeValue> {
        if !self.domain.contains(x) {
            return Err(Error::domain(format!(
                "derivative of {} requested at x = {x}, outside {}",
                self.name, self.domain
            )));
        }
        if let Some(d) = &self.derivative {
            let value = d(x);
            if !value.is_finite() {
                return Err(Error::Evaluation { at: x, value });
            }
            return Ok(DerivativeValue {
                value,
                finite_difference: false,
            });
        }
        let h = f64::EPSILON.cbrt() * x.abs().max(1.0);
        let (lo, hi) = (x - h, x + h);
        let value = match (self.domain.contains(lo), self.domain.contains(hi)) {
            (true, true) => (self.try_eval(hi)? - self.try_eval(lo)?) / (hi - lo),
            (false, true) => (self.try_eval(hi)? - self.try_eval(x)?) / h,
            (true, false) => (self.try_eval(x)? - self.try_eval(lo)?) / h,
            (false, false) => {
                return Err(Error::domain(format!(
                    "domain {} too narrow for a finite difference at {x}",
                    self.domain
                )))
            }
        };
        Ok(DerivativeValue {
            value,
            finite_difference: true,
        })
    }

    /// The same function restricted to `[lo, hi]`.
    pub fn restricted(&self, lo: f64, hi: f64) -> Result<Self> {
        let window = Domain::closed(lo, hi)?;
        if !self.domain.contains_interval(lo, hi) {
            return Err(Error::domain(format!(
                "[{lo}, {hi}] is not inside the domain {} of {}",
                self.domain, self.name
            )));
        }
        let mut out = self.clone();
        out.domain = window;
        Ok(out)
    }

    /// x ↦ |f′(x)|^q on the same domain. The result carries no derivative.
    pub fn abs_derivative_pow(&self, q: f64) -> Self {
        let base = self.clone();
        let name = format!("|{}'|^{q}", self.name);
        let domain = self.domain;
        RealFunction::new(name, domain, move |x| match base.derivative_at(x) {
            Ok(d) => d.value.abs().powf(q),
            Err(_) => f64::NAN,
        })
        .with_params(vec![q])
    }
}

/// The map g(x) = mab/(a + mb − x) carrying affine combinations on
/// [a, mb] to harmonic ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicBridge {
    pub a: f64,
    pub b: f64,
    pub m: f64,
}

impl HarmonicBridge {
    pub fn new(a: f64, b: f64, m: f64) -> Result<Self> {
        if !(a > 0.0) || !b.is_finite() || !(m > 0.0 && m <= 1.0) {
            return Err(Error::domain(format!(
                "bridge needs a > 0 and m in (0, 1], got a = {a}, m = {m}"
            )));
        }
        if !(a < m * b) {
            return Err(Error::domain(format!(
                "bridge needs a < mb, got a = {a}, mb = {}",
                m * b
            )));
        }
        Ok(Self { a, b, m })
    }

    pub fn upper(&self) -> f64 {
        self.m * self.b
    }

    pub fn apply(&self, x: f64) -> f64 {
        let Self { a, b, m } = *self;
        m * a * b / (a + m * b - x)
    }

    pub fn inverse(&self, y: f64) -> f64 {
        let Self { a, b, m } = *self;
        a + m * b - m * a * b / y
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let Self { a, b, m } = *self;
        let d = a + m * b - x;
        m * a * b / (d * d)
    }
}

/// f∘g on [a, mb] with g(x) = mab/(a + mb − x).
pub fn compose_g(f: &RealFunction, a: f64, b: f64, m: f64) -> Result<RealFunction> {
    let g = HarmonicBridge::new(a, b, m)?;
    if !f.domain().contains_interval(a, g.upper()) {
        return Err(Error::domain(format!(
            "[{a}, {}] is not inside the domain {} of {}",
            g.upper(),
            f.domain(),
            f.name()
        )));
    }
    let domain = Domain::closed(a, g.upper())?;
    let outer = f.clone();
    let composed = RealFunction::new(format!("{}∘g[{a},{b},{m}]", f.name()), domain, move |x| {
        outer.eval(g.apply(x))
    })
    .with_params(vec![a, b, m]);
    if f.has_derivative() {
        let outer = f.clone();
        Ok(
            composed.with_derivative(move |x| match outer.derivative_at(g.apply(x)) {
                Ok(d) => d.value * g.derivative(x),
                Err(_) => f64::NAN,
            }),
        )
    } else {
        Ok(composed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_parses_every_address() {
        for spec in [
            "pow:0.5",
            "square",
            "identity",
            "neg-identity",
            "log",
            "exp",
            "const:0",
        ] {
            let f = RealFunction::parse(spec).unwrap();
            assert!(f.has_derivative());
            assert_eq!(f.name(), spec);
        }
        assert!(matches!(RealFunction::parse("sin"), Err(Error::Usage(_))));
        assert!(matches!(
            RealFunction::parse("pow:abc"),
            Err(Error::Usage(_))
        ));
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        for spec in [
            "pow:0.5", "pow:2.5", "square", "identity", "log", "exp", "const:3",
        ] {
            let f = RealFunction::parse(spec).unwrap();
            let bare = RealFunction::new("bare", Domain::POSITIVE, {
                let f = f.clone();
                move |x| f.eval(x)
            });
            for x in [0.3, 1.0, 2.7, 9.0] {
                let exact = f.derivative_at(x).unwrap();
                let approx = bare.derivative_at(x).unwrap();
                assert!(!exact.finite_difference);
                assert!(approx.finite_difference);
                let scale = exact.value.abs().max(1.0);
                assert!(
                    (exact.value - approx.value).abs() < 1e-8 * scale,
                    "{spec} at {x}"
                );
            }
        }
    }

    #[test]
    fn finite_difference_is_one_sided_at_domain_edge() {
        let f = RealFunction::new("sq", Domain::closed(1.0, 2.0).unwrap(), |x| x * x);
        let d = f.derivative_at(1.0).unwrap();
        assert!((d.value - 2.0).abs() < 1e-4);
        assert!(d.finite_difference);
    }

    #[test]
    fn try_eval_checks_domain() {
        let f = RealFunction::log();
        assert!(matches!(f.try_eval(0.0), Err(Error::Domain(_))));
        assert!(f.try_eval(1.0).is_ok());
        let r = f.restricted(1.0, 2.0).unwrap();
        assert!(matches!(r.try_eval(2.5), Err(Error::Domain(_))));
    }

    #[test]
    fn bridge_fixes_its_endpoints() {
        let g = HarmonicBridge::new(1.0, 3.0, 0.5).unwrap();
        assert!((g.apply(1.0) - 1.0).abs() < 1e-15);
        assert!((g.apply(1.5) - 1.5).abs() < 1e-15);
        for x in [1.1, 1.25, 1.4] {
            assert!((g.inverse(g.apply(x)) - x).abs() < 1e-14);
        }
    }

    #[test]
    fn bridge_turns_affine_into_harmonic_points() {
        let (a, b, m) = (1.0, 3.0, 0.7);
        let g = HarmonicBridge::new(a, b, m).unwrap();
        for i in 0..=10 {
            let t = i as f64 / 10.0;
            let lhs = g.apply(t * a + m * (1.0 - t) * b);
            let rhs = m * a * b / (m * t * b + (1.0 - t) * a);
            assert!((lhs - rhs).abs() < 1e-14, "t = {t}");
        }
    }

    #[test]
    fn compose_rejects_a_at_or_above_mb() {
        assert!(matches!(
            compose_g(&RealFunction::identity(), 2.0, 2.0, 1.0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            compose_g(&RealFunction::identity(), 1.0, 2.0, 0.5),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn composed_identity_is_two_over_three_minus_x() {
        let h = compose_g(&RealFunction::identity(), 1.0, 2.0, 1.0).unwrap();
        for x in [1.0, 1.3, 1.9, 2.0] {
            assert!((h.eval(x) - 2.0 / (3.0 - x)).abs() < 1e-15);
            let d = h.derivative_at(x).unwrap().value;
            assert!((d - 2.0 / (3.0 - x).powi(2)).abs() < 1e-14);
        }
    }
}
