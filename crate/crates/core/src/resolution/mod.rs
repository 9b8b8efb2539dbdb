//! Free complexes over a polynomial ring: exactness checks, repairs and
//! syzygy computations.

mod complex;
mod exactness;
mod linalg;
mod matrix;
mod repair;
mod schreyer;

pub use complex::{compose_check, composition_defects, ComplexJson, CompositionDefect, FreeComplex};
pub use exactness::{
    buchsbaum_eisenbud_verify, buchsbaum_eisenbud_verify_seeded, verify_with_repair, ExactnessVerdict,
    GradeCertificate, MinorSpec, MinorValue, RANDOM_MINOR_ATTEMPTS,
};
pub use linalg::{
    determinant, matrix_rank, matrix_rank_seeded, minor_determinant, modular_rank, random_point, rank_mod_p,
    solve_sparse, Equation, Field, Fp, PRIME,
};
pub use matrix::{check_indices, MatrixJson, PolynomialMatrix};
pub use repair::{repair_complex, repair_differential, RepairLog, RepairRecord, MAX_REPAIR_ROWS};
pub use schreyer::{
    betti_via_schreyer, betti_via_schreyer_with, minimal_resolution, minimize, schreyer_resolution, FreeResolution,
    GradedBetti, MinimizationOrder, MAX_SCHREYER_GENERATORS, MAX_SCHREYER_VARS,
};

/// Environment variable overriding the seed of randomized pre-passes.
pub const SEED_VAR: &str = "MONOCURVE_SEED";

/// Seed from [`SEED_VAR`], defaulting to 0.
pub fn seed() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}
