//! Log-gamma, beta, Gauss 2F1 on both evaluation paths, and adaptive quadrature.

use harmonic_hadamard::specfun::{
    beta, gauss_2f1, gauss_2f1_integral, gauss_2f1_series, integrate, ln_gamma, HypergeometricArgs,
    QuadratureSpec,
};

fn main() -> harmonic_hadamard::Result<()> {
    for x in [0.5, 1.0, 2.5, 10.0, 100.0] {
        println!("ln Γ({x:>5}) = {:.17e}", ln_gamma(x)?);
    }
    println!("B(2, 3) = {:.17} (exact 1/12)", beta(2.0, 3.0)?);

    // ₂F₁(1, 1; 2; z) = −ln(1 − z)/z
    for z in [0.3, 0.5, 0.9] {
        let args = HypergeometricArgs::new(1.0, 1.0, 2.0, z);
        let exact = -(-z).ln_1p() / z;
        println!(
            "2F1(1,1;2;{z}) = {:.17} (series {:.17}, integral {:.17}, exact {exact:.17})",
            gauss_2f1(args)?,
            gauss_2f1_series(args)?,
            gauss_2f1_integral(args)?,
        );
    }

    // a kink at 1/2 is handled by passing it as a breakpoint
    let spec = QuadratureSpec::relative(1e-13).with_breakpoints([0.5]);
    let r = integrate(|t| (1.0 - 2.0 * t).abs() * t.sqrt(), 0.0, 1.0, &spec)?;
    println!(
        "∫|1-2t|√t dt = {:.17} ± {:.1e} ({} subintervals, {} evaluations)",
        r.value, r.abs_error, r.subdivisions, r.evaluations
    );
    Ok(())
}
