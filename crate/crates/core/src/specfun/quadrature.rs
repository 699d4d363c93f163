//! Globally adaptive Gauss-Kronrod (G10/K21) quadrature with user breakpoints.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::CompensatedSum;

/// Kronrod abscissae on [0, 1], descending; odd indices are the Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_74,
    0.973_906_528_517_171_720_08,
    0.930_157_491_355_708_226_00,
    0.865_063_366_688_984_510_73,
    0.780_817_726_586_416_897_06,
    0.679_409_568_299_024_406_23,
    0.562_757_134_668_604_683_34,
    0.433_395_394_129_247_190_80,
    0.294_392_862_701_460_198_13,
    0.148_874_338_981_631_210_88,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278,
    0.032_558_162_307_964_727_479,
    0.054_755_896_574_351_996_031,
    0.075_039_674_810_919_952_767,
    0.093_125_454_583_697_605_535,
    0.109_387_158_802_297_641_90,
    0.123_491_976_262_065_851_08,
    0.134_709_217_311_473_325_93,
    0.142_775_938_577_060_080_80,
    0.147_739_104_901_338_491_37,
    0.149_445_554_002_916_905_66,
];

/// Gauss weights matching XGK[1], XGK[3], …, XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_594,
    0.149_451_349_150_580_593_15,
    0.219_086_362_515_982_044_00,
    0.269_266_719_309_996_355_09,
    0.295_524_224_714_752_870_17,
];

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
    /// Interior points where the integrand may have a kink or singularity.
    /// The interval is always split at these before any adaptive refinement.
    pub breakpoints: Vec<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_subdivisions: 2000,
            breakpoints: Vec::new(),
        }
    }
}

impl QuadratureSpec {
    /// Purely relative tolerance; the absolute floor is the smallest normal float.
    pub fn relative(rel_tol: f64) -> Self {
        Self {
            abs_tol: f64::MIN_POSITIVE,
            rel_tol,
            ..Self::default()
        }
    }

    pub fn with_breakpoints(mut self, breakpoints: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints = breakpoints.into_iter().collect();
        self
    }

    fn validate(&self, lo: f64, hi: f64) -> Result<()> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature tolerances must be positive"));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::domain("quadrature needs at least one subdivision"));
        }
        if !lo.is_finite() || !hi.is_finite() || !(lo < hi) {
            return Err(Error::domain(format!(
                "integration bounds must be finite with lo < hi, got [{lo}, {hi}]"
            )));
        }
        if let Some(bp) = self.breakpoints.iter().find(|&&p| !(p > lo && p < hi)) {
            return Err(Error::domain(format!(
                "breakpoint {bp} is not strictly inside [{lo}, {hi}]"
            )));
        }
        Ok(())
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub abs_error: f64,
    pub subdivisions: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    // Largest error first; ties broken by position so the order is total.
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.lo.total_cmp(&self.lo))
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

fn sample<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let y = f(x);
    if y.is_finite() {
        Ok(y)
    } else {
        Err(Error::Evaluation { at: x, value: y })
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Result<Segment> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = sample(f, center)?;

    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    let mut res_kronrod = f_center * WGK[10];
    let mut res_gauss = 0.0;
    let mut res_abs = res_kronrod.abs();

    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = sample(f, center - dx)?;
        let f2 = sample(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_kronrod += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_gauss += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_kronrod;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let abs_half = half.abs();
    let error = rescale_error(
        (res_kronrod - res_gauss) * half,
        res_abs * abs_half,
        res_asc * abs_half,
    );
    Ok(Segment {
        lo,
        hi,
        value: res_kronrod * half,
        error,
    })
}

fn too_small(lo: f64, hi: f64) -> bool {
    let mid = 0.5 * (lo + hi);
    mid <= lo || mid >= hi || (hi - lo) <= 1e3 * f64::EPSILON * mid.abs().max(f64::MIN_POSITIVE)
}

/// Integrate `f` over `[lo, hi]`.
///
/// The interval is first cut at every breakpoint in `spec`; the segment with
/// the largest error estimate is then bisected until the summed error is at
/// most `max(abs_tol, rel_tol·|value|)`. The integrand is never evaluated at
/// `lo`, `hi` or a breakpoint.
pub fn integrate<F>(f: F, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<Integral>
where
    F: Fn(f64) -> f64,
{
    spec.validate(lo, hi)?;

    let mut cuts = Vec::with_capacity(spec.breakpoints.len() + 2);
    cuts.push(lo);
    cuts.extend(spec.breakpoints.iter().copied());
    cuts.push(hi);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let mut heap = BinaryHeap::with_capacity(spec.max_subdivisions + cuts.len());
    let mut frozen: Vec<Segment> = Vec::new();
    for w in cuts.windows(2) {
        heap.push(kronrod21(&f, w[0], w[1])?);
    }
    let mut evaluations = 21 * heap.len();

    let totals = |heap: &BinaryHeap<Segment>, frozen: &[Segment]| {
        let mut value = CompensatedSum::new();
        let mut error = CompensatedSum::new();
        for s in heap.iter().chain(frozen.iter()) {
            value.add(s.value);
            error.add(s.error);
        }
        (value.value(), error.value())
    };

    loop {
        let (value, error) = totals(&heap, &frozen);
        let target = spec.abs_tol.max(spec.rel_tol * value.abs());
        let subdivisions = heap.len() + frozen.len();
        if error <= target {
            return Ok(Integral {
                value,
                abs_error: error,
                subdivisions,
                evaluations,
            });
        }
        if subdivisions >= spec.max_subdivisions || heap.is_empty() {
            return Err(Error::Accuracy {
                context: format!(
                    "adaptive quadrature on [{lo}, {hi}] after {subdivisions} subdivisions"
                ),
                estimate: value,
                achieved_error: error,
            });
        }

        let worst = heap.pop().expect("heap is non-empty");
        if too_small(worst.lo, worst.hi) {
            frozen.push(worst);
            continue;
        }
        let mid = 0.5 * (worst.lo + worst.hi);
        heap.push(kronrod21(&f, worst.lo, mid)?);
        heap.push(kronrod21(&f, mid, worst.hi)?);
        evaluations += 42;
    }
}
