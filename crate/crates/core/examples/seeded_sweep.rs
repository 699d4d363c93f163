//! A seeded sweep over random parameter tuples, rendered as CSV.

use harmonic_hadamard::statement::Statement;
use harmonic_hadamard::sweep::{run_sweep, Format, ParamRange, SweepConfig};

fn main() -> harmonic_hadamard::Result<()> {
    let statements = vec![Statement::IntegralMeanBound, Statement::PowerMeanBound];
    let mut config = SweepConfig::new(
        42,
        8,
        statements,
        vec!["pow:*".into(), "neg-identity".into()],
    );
    // x^s is harmonically convex for s in (0, 1], and so is |f'|^q once q(1 − s) ≥ 1
    config.ranges.alpha = ParamRange::point(1.0);
    config.ranges.m = ParamRange::point(1.0);
    config.ranges.q = ParamRange::new(2.0, 3.0);
    config.ranges.s = ParamRange::new(0.05, 0.5);
    config.check_hypothesis = true;
    let outcome = run_sweep(&config)?;
    let s = outcome.summary;
    println!(
        "{} rows: {} ok, {} violated, {} hypothesis-failed, {} errors",
        s.rows, s.ok, s.violated, s.hypothesis_failed, s.errors
    );
    print!("{}", outcome.render(Format::Csv)?);
    Ok(())
}
