//! Hermite-Hadamard type bounds for one function, with and without the
//! convexity hypothesis check.

use harmonic_hadamard::convexity::{RealFunction, SampleScheme};
use harmonic_hadamard::inequalities::{trapezoid_error, HypothesisScope};
use harmonic_hadamard::statement::{Statement, StatementParams};

fn main() -> harmonic_hadamard::Result<()> {
    let f = RealFunction::identity();
    let (a, b) = (1.0, 3.0);
    let t = trapezoid_error(&f, a, b)?;
    println!(
        "trapezoid error of x on [1, 3]: {:.17e} (identity residual {:.1e})",
        t.value, t.residual
    );

    let params = StatementParams::new(a, b).alpha(0.5).m(1.0).q(2.0);
    for statement in Statement::ALL.into_iter().filter(|s| s.takes_function()) {
        let report = statement.evaluate(Some(&f), &params)?;
        let hypothesis =
            statement.hypothesis(&f, &params, HypothesisScope::Local, &SampleScheme::light(0))?;
        println!(
            "{:<10} lhs {:>12.6e}  rhs {:>12.6e}  holds {:<5}  hypothesis {}",
            statement.id(),
            report.lhs,
            report.rhs,
            report.holds,
            hypothesis.map_or("n/a".to_string(), |h| h.holds.to_string())
        );
    }

    // √x with α = s = 1/2 and m = 1 turns the integral-mean bound into an equality
    let anchor = Statement::IntegralMeanBound.evaluate(
        Some(&RealFunction::pow(0.5)),
        &StatementParams::new(1.0, 4.0).alpha(0.5),
    )?;
    println!("\n{}", anchor.to_json());
    Ok(())
}
