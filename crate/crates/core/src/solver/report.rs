use super::config::SolverKind;
use crate::discretization::{MomentField, ScalarField};

/// Outcome of one iterative solve.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub solver: SolverKind,
    pub converged: bool,
    pub iterations: usize,
    /// Ratio of the last two successive-difference norms; `None` when
    /// fewer than three iterates exist or the history underflowed.
    pub spectral_radius: Option<f64>,
    /// Relative deviation of Φ at each iteration (infinite for the first,
    /// which is measured against the zero initial guess).
    pub deviations: Vec<f64>,
    /// ‖Φ^{i} - Φ^{i-1}‖₂ at each iteration.
    pub difference_norms: Vec<f64>,
    /// Laguerre moments from the last high-order sweep.
    pub moments: MomentField,
    pub scalar_flux: ScalarField,
    pub collision_rate: ScalarField,
}
