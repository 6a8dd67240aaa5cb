//! S2 transport synthetic acceleration.
//!
//! Each outer iteration performs one high-order sweep with the lagged
//! scattering source, then estimates the error of that half iterate from the
//! S2 form of the error equation
//!
//! ```text
//! μ ε_m' + ε_m - S_ε = (S^{i+1/2} - S^i) - Σ_{j<m} ε_j
//! ```
//!
//! Writing T for the S2 cascade sweep and L = (scattering source) ∘ T, the
//! error source solves `(I - L) S_ε = L r` with `r = S^{i+1/2} - S^i`. L acts
//! on the 2×cells nodal scalar field only, so it is assembled once from unit
//! impulses and LU-factored. The correction is applied to the angle-integrated
//! quantities: the next scattering source and the scalar flux used by the
//! stopping test.

use nalgebra::{DMatrix, DVector};

use super::config::{ProblemConfig, SolverKind};
use super::convergence::Monitor;
use super::report::SolveReport;
use super::setup::Discretization;
use crate::discretization::{
    scattering_source, scattering_source_into, weighted_angular_sum, AngularQuadrature,
    MomentField, ScalarField, SpatialMesh, Sweeper,
};
use crate::error::{Error, Result};
use crate::freepath::MomentCoefficients;
use crate::postprocess::{collision_rate_density, scalar_flux_from_moments};

/// Factored `(I - L)` for the S2 error equation on one mesh.
#[derive(Debug, Clone)]
pub struct LowOrderOperator {
    sweeper: Sweeper,
    coeffs: MomentCoefficients,
    scattering_ratio: f64,
    transfer: DMatrix<f64>,
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
    impulse_sweeps: usize,
}

impl LowOrderOperator {
    pub fn assemble(
        mesh: SpatialMesh,
        coeffs: &MomentCoefficients,
        scattering_ratio: f64,
    ) -> Result<Self> {
        let quad = AngularQuadrature::gauss_legendre(2)?;
        let sweeper = Sweeper::new(mesh, quad, 1.0)?;
        let dim = mesh.nodes();
        let mut transfer = DMatrix::<f64>::zeros(dim, dim);
        let mut impulse = ScalarField::zeros(mesh.cells());
        let mut field = MomentField::zeros(coeffs.len(), 2, mesh.cells());
        let mut column = ScalarField::zeros(mesh.cells());
        let mut impulse_sweeps = 0;
        for j in 0..dim {
            impulse.values_mut()[j] = 1.0;
            sweeper.sweep_into(&impulse, &mut field)?;
            impulse_sweeps += 1;
            scattering_source_into(
                &field,
                sweeper.quadrature(),
                coeffs,
                scattering_ratio,
                &mut column,
            )?;
            transfer.column_mut(j).copy_from_slice(column.values());
            impulse.values_mut()[j] = 0.0;
        }

        let system = DMatrix::<f64>::identity(dim, dim) - &transfer;
        let lu = system.lu();
        if !lu.is_invertible() {
            return Err(Error::Singular("low-order operator (I - L)"));
        }
        Ok(Self {
            sweeper,
            coeffs: coeffs.clone(),
            scattering_ratio,
            transfer,
            lu,
            impulse_sweeps,
        })
    }

    /// The assembled L (source-to-scattering-source map).
    pub fn transfer_matrix(&self) -> &DMatrix<f64> {
        &self.transfer
    }

    pub fn impulse_sweeps(&self) -> usize {
        self.impulse_sweeps
    }

    pub fn quadrature(&self) -> &AngularQuadrature {
        self.sweeper.quadrature()
    }

    pub fn sweep(&self, source: &ScalarField) -> Result<MomentField> {
        self.sweeper.sweep(source, self.coeffs.len())
    }

    /// L g: one S2 cascade sweep driven by `g`, reduced to its scattering source.
    pub fn apply(&self, g: &ScalarField) -> Result<ScalarField> {
        let field = self.sweep(g)?;
        scattering_source(
            &field,
            self.quadrature(),
            &self.coeffs,
            self.scattering_ratio,
        )
    }

    /// Solves the S2 error equation for the residual `r = S^{i+1/2} - S^i`.
    /// Returns the error scattering source S_ε and the error moments ε.
    pub fn error_solve(&self, residual: &ScalarField) -> Result<(ScalarField, MomentField)> {
        let rhs = DVector::from_column_slice(self.apply(residual)?.values());
        let s_eps = self
            .lu
            .solve(&rhs)
            .ok_or(Error::Singular("low-order operator (I - L)"))?;
        let s_eps = ScalarField::from_nodal(s_eps.as_slice().to_vec())?;
        let eps = self.sweep(&(&s_eps + residual))?;
        Ok((s_eps, eps))
    }
}

pub fn assemble_low_order(config: &ProblemConfig) -> Result<LowOrderOperator> {
    let disc = Discretization::new(config)?;
    LowOrderOperator::assemble(disc.mesh, &disc.coeffs, config.c)
}

pub fn s2sa_solve(config: &ProblemConfig) -> Result<SolveReport> {
    let disc = Discretization::new(config)?;
    let low = LowOrderOperator::assemble(disc.mesh, &disc.coeffs, config.c)?;
    s2sa_solve_with(&disc, &low, config)
}

pub(crate) fn s2sa_solve_with(
    disc: &Discretization,
    low: &LowOrderOperator,
    config: &ProblemConfig,
) -> Result<SolveReport> {
    let quad = disc.quadrature();
    let cells = disc.mesh.cells();
    let mut field = MomentField::zeros(disc.moments(), quad.len(), cells);
    let mut scatter = ScalarField::zeros(cells);
    let mut half_scatter = ScalarField::zeros(cells);
    let mut monitor = Monitor::new(config.xi, config.stopping_norm);
    let mut converged = false;
    let mut phi = ScalarField::zeros(cells);
    let mut rate = ScalarField::zeros(cells);
    let mut phi_eps = ScalarField::zeros(cells);
    let mut rate_eps = ScalarField::zeros(cells);

    for _ in 0..config.max_iterations {
        // high-order half iterate
        let source = &scatter + &disc.half_source;
        disc.sweeper.sweep_into(&source, &mut field)?;
        scattering_source_into(
            &field,
            quad,
            &disc.coeffs,
            disc.scattering_ratio,
            &mut half_scatter,
        )?;
        let residual = &half_scatter - &scatter;

        // low-order error estimate
        let (s_eps, eps) = low.error_solve(&residual)?;
        weighted_angular_sum(
            &eps,
            low.quadrature().weights(),
            &disc.coeffs.recovery,
            &mut phi_eps,
        )?;
        weighted_angular_sum(
            &eps,
            low.quadrature().weights(),
            &disc.coeffs.scattering,
            &mut rate_eps,
        )?;

        // corrected angle-integrated quantities
        scatter = &half_scatter + &s_eps;
        phi = scalar_flux_from_moments(&field, quad, &disc.coeffs)?;
        phi.axpy(1.0, &phi_eps);
        rate = collision_rate_density(&field, quad, &disc.coeffs)?;
        rate.axpy(1.0, &rate_eps);

        if monitor.record(&phi)? {
            converged = true;
            break;
        }
    }

    Ok(SolveReport {
        solver: SolverKind::S2sa,
        converged,
        iterations: monitor.iterations(),
        spectral_radius: monitor.spectral_radius(),
        deviations: monitor.deviations,
        difference_norms: monitor.difference_norms,
        moments: field,
        scalar_flux: phi,
        collision_rate: rate,
    })
}
