//! Iterative solution of the spectral S_N equations.

pub mod config;
pub mod convergence;
pub mod report;
pub mod s2sa;
pub mod setup;
pub mod si;

pub use config::{ProblemConfig, SolverKind, StoppingNorm};
pub use convergence::{relative_deviation, spectral_radius_estimate, stopping_check};
pub use report::SolveReport;
pub use s2sa::{assemble_low_order, s2sa_solve, LowOrderOperator};
pub use setup::Discretization;
pub use si::si_solve;

use crate::error::Result;

/// Runs the solver selected by `config.solver`.
pub fn solve(config: &ProblemConfig) -> Result<SolveReport> {
    match config.solver {
        SolverKind::Si => si_solve(config),
        SolverKind::S2sa => s2sa_solve(config),
    }
}
