//! Closed-form coefficients next to their quadrature oracles.

use harmonic_hadamard::coefficients::{
    family, family_oracle, lambda123, lambda123_oracle, mu12, mu12_oracle, CoefficientName,
    OracleComparison,
};

fn main() -> harmonic_hadamard::Result<()> {
    let (a, b) = (1.0, 2.0);
    println!(
        "{:<8} {:>5} {:>5} {:>22} {:>22} {:>9}",
        "name", "alpha", "q", "closed form", "oracle", "rel diff"
    );
    for name in [
        CoefficientName::Lambda,
        CoefficientName::Mu,
        CoefficientName::Nu,
    ] {
        for (alpha, q) in [(0.0, 1.0), (0.5, 1.5), (1.0, 3.0)] {
            let c = family(name, alpha, q, a, b)?;
            let o = family_oracle(name, alpha, q, a, b)?;
            let cmp = OracleComparison::new(c.value, o.value);
            println!(
                "{:<8} {alpha:>5} {q:>5} {:>22.17e} {:>22.17e} {:>9.1e}",
                format!("{name:?}"),
                c.value,
                o.value,
                cmp.rel_diff
            );
        }
    }

    println!();
    for (c, o) in lambda123(a, b)?.iter().zip(lambda123_oracle(a, b)?) {
        println!(
            "{:<8} {:>22.17e} {:>22.17e}",
            format!("{:?}", c.name),
            c.value,
            o.value
        );
    }
    for (c, o) in mu12(2.0, a, b)?.iter().zip(mu12_oracle(2.0, a, b)?) {
        println!(
            "{:<8} {:>22.17e} {:>22.17e}  (q = 2)",
            format!("{:?}", c.name),
            c.value,
            o.value
        );
    }
    Ok(())
}
