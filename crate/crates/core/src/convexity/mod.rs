//! Sampling checkers for harmonic and affine (α, m)-convexity, the function
//! registry they operate on, and the map g linking the two notions.

mod checks;
mod function;

pub use checks::{
    affine_am_point, check_am_convex, check_am_convex_at, check_bridge_inequality,
    check_composition_equivalence, check_harmonic_am_convex, check_harmonic_am_convex_at,
    generate_samples, harmonic_am_point, CompositionCheck, ConvexityParams, Sample, SampleScheme,
    AFFINE_STATEMENT, BRIDGE_STATEMENT, HARMONIC_STATEMENT, NO_VIOLATION_NOTE,
};
pub use function::{
    compose_g, DerivativeValue, Domain, HarmonicBridge, Monotonicity, RealFunction,
    FINITE_DIFFERENCE_NOTE,
};
