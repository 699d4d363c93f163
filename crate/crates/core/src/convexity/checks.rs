use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::function::{Domain, HarmonicBridge, RealFunction};
use crate::error::{Error, Result};
use crate::report::{Counterexample, ReportInputs, VerificationReport};

pub const HARMONIC_STATEMENT: &str = "def-2.1";
pub const AFFINE_STATEMENT: &str = "def-1";
pub const BRIDGE_STATEMENT: &str = "eq-2-0";

pub const NO_VIOLATION_NOTE: &str =
    "no violation found among the samples; sampling can falsify but not certify convexity";

/// The pair (α, m) with α ∈ [0, 1] and m ∈ (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConvexityParams {
    pub alpha: f64,
    pub m: f64,
}

impl ConvexityParams {
    pub fn new(alpha: f64, m: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::domain(format!(
                "alpha must lie in [0, 1], got {alpha}"
            )));
        }
        if !(m > 0.0 && m <= 1.0) {
            return Err(Error::domain(format!("m must lie in (0, 1], got {m}")));
        }
        Ok(Self { alpha, m })
    }
}

/// How the (x, y, t) samples of a convexity check are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleScheme {
    /// Points per axis of the tensor grid over (x, y, t).
    pub grid_density: usize,
    /// Extra uniformly random triples drawn from a seeded stream.
    pub random_count: usize,
    pub seed: u64,
    /// Relative float-noise allowance: a sample passes when
    /// lhs ≤ rhs + slack·max(1, |lhs|, |rhs|).
    pub slack: f64,
}

impl Default for SampleScheme {
    fn default() -> Self {
        Self {
            grid_density: 33,
            random_count: 10_000,
            seed: 0,
            slack: 1e-12,
        }
    }
}

impl SampleScheme {
    /// A cheaper scheme for checks repeated once per sweep row.
    pub fn light(seed: u64) -> Self {
        Self {
            grid_density: 9,
            random_count: 256,
            seed,
            slack: 1e-12,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.grid_density < 3 {
            return Err(Error::domain(format!(
                "grid_density must be at least 3, got {}",
                self.grid_density
            )));
        }
        if !(self.slack >= 0.0) {
            return Err(Error::domain(format!(
                "slack must be nonnegative, got {}",
                self.slack
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub y: f64,
    pub t: f64,
}

/// The harmonic (α, m) combination mxy/(mty + (1−t)x) = (t/x + (1−t)/(my))⁻¹.
pub fn harmonic_am_point(x: f64, y: f64, t: f64, m: f64) -> f64 {
    m * x * y / (m * t * y + (1.0 - t) * x)
}

/// The affine (α, m) combination tx + m(1−t)y.
pub fn affine_am_point(x: f64, y: f64, t: f64, m: f64) -> f64 {
    t * x + m * (1.0 - t) * y
}

fn sampling_domain(f: &RealFunction) -> Result<Domain> {
    let d = f.domain();
    if !d.is_bounded_closed() {
        return Err(Error::domain(format!(
            "{} has unbounded or open domain {}; restrict it to a closed window before sampling",
            f.name(),
            d
        )));
    }
    Ok(d)
}

/// Grid and seeded random samples with x, y and my all inside `domain`.
pub fn generate_samples(domain: Domain, m: f64, scheme: &SampleScheme) -> Result<Vec<Sample>> {
    scheme.validate()?;
    let (lo, hi) = (domain.lo, domain.hi);
    let y_lo = lo / m;
    if y_lo > hi {
        return Err(Error::domain(format!(
            "no y in [{lo}, {hi}] keeps my inside the domain for m = {m}"
        )));
    }
    let n = scheme.grid_density;
    let node = |i: usize, from: f64, to: f64| {
        if i == n - 1 {
            to
        } else {
            from + (to - from) * i as f64 / (n - 1) as f64
        }
    };
    let mut samples = Vec::with_capacity(n * n * n + scheme.random_count);
    for i in 0..n {
        let x = node(i, lo, hi);
        for j in 0..n {
            let y = node(j, y_lo, hi);
            for k in 0..n {
                samples.push(Sample {
                    x,
                    y,
                    t: node(k, 0.0, 1.0),
                });
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(scheme.seed);
    for _ in 0..scheme.random_count {
        samples.push(Sample {
            x: rng.gen_range(lo..=hi),
            y: rng.gen_range(y_lo..=hi),
            t: rng.gen_range(0.0..=1.0),
        });
    }
    Ok(samples)
}

fn snap_into(domain: Domain, p: f64) -> Result<f64> {
    if domain.contains(p) {
        return Ok(p);
    }
    let fuzz = 8.0 * f64::EPSILON * p.abs();
    if (p - domain.lo).abs() <= fuzz {
        return Ok(domain.lo);
    }
    if (p - domain.hi).abs() <= fuzz {
        return Ok(domain.hi);
    }
    Err(Error::domain(format!(
        "sample point {p} is outside the domain {domain}"
    )))
}

#[derive(Clone, Copy)]
enum Combination {
    Harmonic,
    Affine,
}

fn check_at(
    f: &RealFunction,
    params: ConvexityParams,
    samples: &[Sample],
    slack: f64,
    combination: Combination,
) -> Result<VerificationReport> {
    let domain = sampling_domain(f)?;
    let ConvexityParams { alpha, m } = params;
    let statement = match combination {
        Combination::Harmonic => HARMONIC_STATEMENT,
        Combination::Affine => AFFINE_STATEMENT,
    };

    // (excess, lhs, rhs, allowance, sample) of the worst sample so far
    let mut worst: Option<(f64, f64, f64, f64, Sample)> = None;
    for s in samples {
        for (label, v) in [("x", s.x), ("y", s.y), ("my", m * s.y)] {
            if snap_into(domain, v).is_err() {
                return Err(Error::domain(format!(
                    "sample {label} = {v} (x = {}, y = {}, t = {}) is outside {domain}",
                    s.x, s.y, s.t
                )));
            }
        }
        if !(0.0..=1.0).contains(&s.t) {
            return Err(Error::domain(format!(
                "sample t = {} is outside [0, 1]",
                s.t
            )));
        }
        let point = match combination {
            Combination::Harmonic => harmonic_am_point(s.x, s.y, s.t, m),
            Combination::Affine => affine_am_point(s.x, s.y, s.t, m),
        };
        let point = snap_into(domain, point)?;
        let lhs = f.try_eval(point)?;
        let wa = s.t.powf(alpha);
        let rhs = wa * f.try_eval(s.x)? + m * (1.0 - wa) * f.try_eval(s.y)?;
        let allowance = slack * 1f64.max(lhs.abs()).max(rhs.abs());
        let excess = lhs - rhs - allowance;
        if worst.is_none_or(|w| excess > w.0) {
            worst = Some((excess, lhs, rhs, allowance, *s));
        }
    }

    let (excess, lhs, rhs, allowance, s) =
        worst.ok_or_else(|| Error::domain("convexity check needs at least one sample"))?;
    let inputs = ReportInputs::default()
        .with_function(f.name())
        .with_alpha(alpha)
        .with_m(m)
        .with_extra("domain_lo", domain.lo)
        .with_extra("domain_hi", domain.hi)
        .with_extra("samples", samples.len() as f64);
    let mut report = VerificationReport::new(statement, lhs, rhs, allowance, inputs);
    if excess > 0.0 {
        report.counterexample = Some(Counterexample {
            x: s.x,
            y: s.y,
            t: s.t,
            lhs,
            rhs,
        });
    } else {
        report.push_note(NO_VIOLATION_NOTE);
    }
    Ok(report)
}

/// Sample f(mxy/(mty + (1−t)x)) ≤ t^α f(x) + m(1 − t^α) f(y).
///
/// `f` must carry a closed, bounded domain (see [`RealFunction::restricted`]).
pub fn check_harmonic_am_convex(
    f: &RealFunction,
    params: ConvexityParams,
    scheme: &SampleScheme,
) -> Result<VerificationReport> {
    let samples = generate_samples(sampling_domain(f)?, params.m, scheme)?;
    check_at(f, params, &samples, scheme.slack, Combination::Harmonic)
}

/// Sample f(tx + m(1−t)y) ≤ t^α f(x) + m(1 − t^α) f(y).
pub fn check_am_convex(
    f: &RealFunction,
    params: ConvexityParams,
    scheme: &SampleScheme,
) -> Result<VerificationReport> {
    let samples = generate_samples(sampling_domain(f)?, params.m, scheme)?;
    check_at(f, params, &samples, scheme.slack, Combination::Affine)
}

/// Harmonic check at caller-supplied samples.
pub fn check_harmonic_am_convex_at(
    f: &RealFunction,
    params: ConvexityParams,
    samples: &[Sample],
    slack: f64,
) -> Result<VerificationReport> {
    check_at(f, params, samples, slack, Combination::Harmonic)
}

/// Affine check at caller-supplied samples.
pub fn check_am_convex_at(
    f: &RealFunction,
    params: ConvexityParams,
    samples: &[Sample],
    slack: f64,
) -> Result<VerificationReport> {
    check_at(f, params, samples, slack, Combination::Affine)
}

/// mxy/(mty + (1−t)x) ≤ tx + m(1−t)y, which holds for every admissible input
/// because the difference is t(1−t)(x − my)²/(mty + (1−t)x).
pub fn check_bridge_inequality(x: f64, y: f64, t: f64, m: f64) -> Result<VerificationReport> {
    if !(x > 0.0) || !(y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(format!(
            "x and y must be positive, got ({x}, {y})"
        )));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(format!("t must lie in [0, 1], got {t}")));
    }
    if !(m > 0.0 && m <= 1.0) {
        return Err(Error::domain(format!("m must lie in (0, 1], got {m}")));
    }
    let lhs = harmonic_am_point(x, y, t, m);
    let rhs = affine_am_point(x, y, t, m);
    let d = x - m * y;
    let exact_margin = t * (1.0 - t) * d * d / (m * t * y + (1.0 - t) * x);
    let tolerance = 1e-12 * 1f64.max(lhs.abs()).max(rhs.abs());
    let inputs = ReportInputs::default()
        .with_m(m)
        .with_extra("x", x)
        .with_extra("y", y)
        .with_extra("t", t);
    Ok(
        VerificationReport::new(BRIDGE_STATEMENT, lhs, rhs, tolerance, inputs)
            .with_detail("exact_margin", exact_margin),
    )
}

/// Both sides of the f ↔ f∘g equivalence, evaluated on matched samples.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionCheck {
    /// Harmonic (α, m)-convexity of f on [a, mb].
    pub harmonic: VerificationReport,
    /// (α, m)-convexity of f∘g on [a, mb].
    pub affine: VerificationReport,
}

impl CompositionCheck {
    pub fn agree(&self) -> bool {
        self.harmonic.holds == self.affine.holds
    }
}

/// Run the harmonic check on f and the affine check on f∘g over [a, mb].
///
/// With m = 1 the affine samples are the harmonic samples pulled back
/// through g, so g maps each affine combination onto the matching harmonic
/// one and the two checks see identical f-values. For m < 1 g no longer
/// intertwines the two combinations and each side gets its own samples.
pub fn check_composition_equivalence(
    f: &RealFunction,
    a: f64,
    b: f64,
    params: ConvexityParams,
    scheme: &SampleScheme,
) -> Result<CompositionCheck> {
    let g = HarmonicBridge::new(a, b, params.m)?;
    let local = f.restricted(a, g.upper())?;
    let composed = super::function::compose_g(f, a, b, params.m)?;
    let samples = generate_samples(local.domain(), params.m, scheme)?;
    let pulled: Vec<Sample> = if params.m == 1.0 {
        samples
            .iter()
            .map(|s| Sample {
                x: g.inverse(s.x).clamp(a, g.upper()),
                y: g.inverse(s.y).clamp(a, g.upper()),
                t: s.t,
            })
            .collect()
    } else {
        generate_samples(composed.domain(), params.m, scheme)?
    };
    let harmonic = check_harmonic_am_convex_at(&local, params, &samples, scheme.slack)?;
    let affine = check_am_convex_at(&composed, params, &pulled, scheme.slack)?;
    Ok(CompositionCheck { harmonic, affine })
}
