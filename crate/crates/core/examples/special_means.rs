//! The two-point means and the four inequalities between them.

use harmonic_hadamard::means::{self, MeanKind};

fn main() -> harmonic_hadamard::Result<()> {
    let (a, b) = (1.0, 2.0);
    for (label, kind) in [
        ("A_0.25", MeanKind::WeightedArithmetic { w: 0.25 }),
        ("A", MeanKind::Arithmetic),
        ("G", MeanKind::Geometric),
        ("H", MeanKind::Harmonic),
        ("L_2", MeanKind::Logarithmic { p: 2.0 }),
        ("L_-2", MeanKind::Logarithmic { p: -2.0 }),
    ] {
        println!("{label:<6} = {:.17}", means::mean(kind, a, b)?);
    }

    println!();
    for alpha in [0.25, 0.5, 0.75] {
        let (q, p) = (2.0, means::conjugate(2.0)?);
        let reports = [
            means::check_prop31(a, b, alpha)?,
            means::check_prop32(a, b, alpha, q)?,
            means::check_prop33(a, b, alpha, q)?,
            means::check_prop34(a, b, alpha, q, p)?,
        ];
        for r in reports {
            println!(
                "alpha {alpha}  {:<9} margin {:>+.6e}  holds {}",
                r.statement_id, r.margin, r.holds
            );
        }
    }
    Ok(())
}
