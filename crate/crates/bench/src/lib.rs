//! Shared problem setups for the kernel benchmarks.

use ncsn_core::solver::Discretization;
use ncsn_core::{FreePathKind, MomentField, ProblemConfig, SolverKind};

/// The thick-slab problem (X = 200, 200 cells, S16, M = 50).
pub fn thick_slab(model: FreePathKind, c: f64, solver: SolverKind) -> ProblemConfig {
    ProblemConfig::thick_slab(model, c, solver)
}

pub fn discretization(config: &ProblemConfig) -> Discretization {
    Discretization::new(config).expect("benchmark config is valid")
}

/// Moment storage matching `disc`, for `Sweeper::sweep_into`.
pub fn moment_buffer(disc: &Discretization) -> MomentField {
    MomentField::zeros(disc.moments(), disc.quadrature().len(), disc.mesh.cells())
}
