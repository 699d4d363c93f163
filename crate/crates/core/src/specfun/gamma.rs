use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;
const HALF_LN_2PI: f64 = 0.918_938_533_204_672_741_8;

/// ζ(k) − 1 for k = 2, 3, …, 30.
const ZETA_MINUS_ONE: [f64; 29] = [
    0.644_934_066_848_226_436,
    0.202_056_903_159_594_285,
    0.082_323_233_711_138_191_5,
    0.036_927_755_143_369_926_3,
    0.017_343_061_984_449_139_7,
    0.008_349_277_381_922_826_84,
    0.004_077_356_197_944_339_38,
    0.002_008_392_826_082_214_42,
    0.000_994_575_127_818_085_337,
    0.000_494_188_604_119_464_559,
    0.000_246_086_553_308_048_299,
    0.000_122_713_347_578_489_147,
    6.124_813_505_870_482_93e-5,
    3.058_823_630_702_049_36e-5,
    1.528_225_940_865_187_17e-5,
    7.637_197_637_899_762_27e-6,
    3.817_293_264_999_839_86e-6,
    1.908_212_716_553_938_93e-6,
    9.539_620_338_727_961_13e-7,
    4.769_329_867_878_064_63e-7,
    2.384_505_027_277_329_9e-7,
    1.192_199_259_653_110_73e-7,
    5.960_818_905_125_947_96e-8,
    2.980_350_351_465_228_02e-8,
    1.490_155_482_836_504_12e-8,
    7.450_711_789_835_429_49e-9,
    3.725_334_024_788_457_05e-9,
    1.862_659_723_513_049_01e-9,
    9.313_274_324_196_681_83e-10,
];

/// B₂ₖ / (2k(2k−1)) for k = 1..=8, the Stirling correction coefficients.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const STIRLING_THRESHOLD: f64 = 10.0;

/// Natural logarithm of Γ(x) for x > 0.
///
/// Arguments are moved into [1.5, 2.5) by the recurrence Γ(x+1) = xΓ(x) and
/// evaluated from the Taylor expansion of ln Γ about 2, whose coefficients
/// are (−1)ᵏ(ζ(k)−1)/k. That keeps full relative accuracy next to the zeros
/// at x = 1 and x = 2. Arguments of 10 and above use Stirling's series.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "ln_gamma requires a finite x > 0, got {x}"
        )));
    }
    Ok(ln_gamma_positive(x))
}

fn ln_gamma_positive(x: f64) -> f64 {
    if x >= STIRLING_THRESHOLD {
        return stirling(x);
    }
    if (0.5..1.5).contains(&x) {
        // ln Γ(x) = ln Γ(x+1) − ln x with z = x − 1 exact; forming x + 1 first
        // would round away the digits that survive next to the zero at 1.
        let z = x - 1.0;
        return taylor_about_two(z) - z.ln_1p();
    }
    if x < 0.5 {
        return ln_gamma_positive(x + 1.0) - x.ln();
    }
    if x < 2.5 {
        return taylor_about_two(x - 2.0);
    }
    // x in [2.5, 10): walk down to [1.5, 2.5) and collect the factors.
    let mut y = x;
    let mut product = 1.0;
    while y >= 2.5 {
        y -= 1.0;
        product *= y;
    }
    taylor_about_two(y - 2.0) + product.ln()
}

fn taylor_about_two(z: f64) -> f64 {
    // ln Γ(2+z) = (1−γ)z + Σ_{k≥2} (−1)^k (ζ(k)−1)/k · z^k, |z| ≤ 1/2 here.
    let mut sum = 0.0;
    for (i, c) in ZETA_MINUS_ONE.iter().enumerate().rev() {
        let k = (i + 2) as f64;
        let sign = if (i + 2) % 2 == 0 { 1.0 } else { -1.0 };
        sum = sum * z + sign * c / k;
    }
    // Horner above builds Σ c_k z^(k−2); multiply back up.
    (1.0 - EULER_GAMMA) * z + sum * z * z
}

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series * inv
}

/// Euler Beta function β(x, y) = Γ(x)Γ(y)/Γ(x+y).
pub fn beta(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0) || !(y > 0.0) || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(format!(
            "beta requires finite positive arguments, got ({x}, {y})"
        )));
    }
    if x == 1.0 {
        return Ok(1.0 / y);
    }
    if y == 1.0 {
        return Ok(1.0 / x);
    }
    let lg = ln_gamma_positive(x) + ln_gamma_positive(y) - ln_gamma_positive(x + y);
    Ok(lg.exp())
}
