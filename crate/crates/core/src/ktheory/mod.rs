//! Evaluators for the closed-form K-theory formulas of Bernoulli-shift
//! crossed products, producing reports from the orbit, character and module
//! machinery, with truncation metadata and built-in cross-checks.

mod colim;
mod cuntz;
mod evaluators;
mod report;

pub use colim::{af_pushout, af_pushout_torsion_free, orbit_colim};
pub use cuntz::{
    izumi_prime_consistency, izumi_z2, izumi_z2_report, o2, o_infinity, zero_theorem,
    zero_theorem_report, ZeroOutcome,
};
pub use evaluators::{
    cantor_conjugacy_form, cantor_full_regular, cantor_orbit_form, cantor_point_oracle, circle,
    cuntz_k, fibonacci_like, finite_dim, jb_orbit_sum, localized_uct, one_plus_on, rotation,
    scan_subsets, wreath_finite, wreath_free, wreath_free_symbolic, CoefficientAlgebra,
    OrbitScan, SymbolicOrbits, Window,
};
pub use report::{KReport, KReportJson, Term, Truncation};
