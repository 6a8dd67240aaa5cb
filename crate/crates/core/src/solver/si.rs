//! Stand-alone source iteration: lag the scattering source, sweep once.

use super::config::{ProblemConfig, SolverKind};
use super::convergence::Monitor;
use super::report::SolveReport;
use super::setup::Discretization;
use crate::discretization::{scattering_source, MomentField, ScalarField};
use crate::error::Result;
use crate::postprocess::{collision_rate_density, scalar_flux_from_moments};

pub fn si_solve(config: &ProblemConfig) -> Result<SolveReport> {
    let disc = Discretization::new(config)?;
    si_solve_with(&disc, config)
}

pub(crate) fn si_solve_with(disc: &Discretization, config: &ProblemConfig) -> Result<SolveReport> {
    let quad = disc.quadrature();
    let mut field = MomentField::zeros(disc.moments(), quad.len(), disc.mesh.cells());
    let mut scatter = ScalarField::zeros(disc.mesh.cells());
    let mut monitor = Monitor::new(config.xi, config.stopping_norm);
    let mut converged = false;
    let mut phi = ScalarField::zeros(disc.mesh.cells());

    for _ in 0..config.max_iterations {
        let source = &scatter + &disc.half_source;
        disc.sweeper.sweep_into(&source, &mut field)?;
        phi = scalar_flux_from_moments(&field, quad, &disc.coeffs)?;
        scatter = scattering_source(&field, quad, &disc.coeffs, disc.scattering_ratio)?;
        if monitor.record(&phi)? {
            converged = true;
            break;
        }
    }

    let collision_rate = collision_rate_density(&field, quad, &disc.coeffs)?;
    Ok(SolveReport {
        solver: SolverKind::Si,
        converged,
        iterations: monitor.iterations(),
        spectral_radius: monitor.spectral_radius(),
        deviations: monitor.deviations,
        difference_norms: monitor.difference_norms,
        moments: field,
        scalar_flux: phi,
        collision_rate,
    })
}
