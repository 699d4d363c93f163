//! Sampling checks for harmonic and affine (α, m)-convexity, and the map g
//! that relates them.

use harmonic_hadamard::convexity::{
    check_am_convex, check_bridge_inequality, check_composition_equivalence,
    check_harmonic_am_convex, ConvexityParams, HarmonicBridge, RealFunction, SampleScheme,
};

fn main() -> harmonic_hadamard::Result<()> {
    let scheme = SampleScheme::default();

    // x² is convex, so harmonic (1, 1)-convexity follows
    let square = RealFunction::square().restricted(1.0, 3.0)?;
    let unit = ConvexityParams::new(1.0, 1.0)?;
    let r = check_harmonic_am_convex(&square, unit, &scheme)?;
    println!(
        "x² on [1, 3], harmonic (1, 1): holds = {} ({})",
        r.holds,
        r.notes.join("; ")
    );

    // √x is harmonically convex but not (1/2, 1)-convex in either sense
    let root = RealFunction::pow(0.5).restricted(1.0, 1.1)?;
    let half = ConvexityParams::new(0.5, 1.0)?;
    for (label, r) in [
        ("harmonic", check_harmonic_am_convex(&root, half, &scheme)?),
        ("affine", check_am_convex(&root, half, &scheme)?),
    ] {
        let cx = r.counterexample.expect("a violation");
        println!(
            "√x on [1, 1.1], {label} (1/2, 1): fails at x = {}, y = {}, t = {} ({:.6} > {:.6})",
            cx.x, cx.y, cx.t, cx.lhs, cx.rhs
        );
    }

    let r = check_bridge_inequality(2.0, 3.0, 0.25, 0.5)?;
    println!(
        "bridge at (2, 3, 1/4, m = 1/2): margin {:.6e}, closed form {:.6e}",
        r.margin,
        r.detail("exact_margin").unwrap()
    );

    let g = HarmonicBridge::new(1.0, 2.0, 1.0)?;
    println!(
        "g on [1, 2]: g(1) = {}, g(1.5) = {}, g(2) = {}",
        g.apply(1.0),
        g.apply(1.5),
        g.apply(2.0)
    );

    // with m = 1 harmonic convexity of f and convexity of f∘g coincide
    for spec in ["identity", "pow:-1", "log", "neg-identity"] {
        let f = RealFunction::parse(spec)?;
        let c = check_composition_equivalence(&f, 1.0, 2.0, unit, &SampleScheme::light(0))?;
        println!(
            "{spec:<13} f harmonic: {:<5}  f∘g affine: {:<5}  agree: {}",
            c.harmonic.holds,
            c.affine.holds,
            c.agree()
        );
    }
    Ok(())
}
