use super::config::ProblemConfig;
use crate::discretization::{AngularQuadrature, ScalarField, SpatialMesh, Sweeper};
use crate::error::Result;
use crate::freepath::{compute_moments, FreePathModel, FreePathQuadrature, MomentCoefficients};

/// Everything derived from a configuration that stays fixed across iterations.
#[derive(Debug, Clone)]
pub struct Discretization {
    pub mesh: SpatialMesh,
    pub model: FreePathModel,
    pub coeffs: MomentCoefficients,
    pub sweeper: Sweeper,
    /// Q/2 on the DG nodes.
    pub half_source: ScalarField,
    pub scattering_ratio: f64,
}

impl Discretization {
    pub fn new(config: &ProblemConfig) -> Result<Self> {
        config.validate()?;
        let mesh = SpatialMesh::uniform(config.slab_length, config.cells)?;
        let quad = AngularQuadrature::gauss_legendre(config.angles)?;
        let model = FreePathModel::new(config.model, config.sigma_t)?;
        let fp = FreePathQuadrature::new(config.freepath_node_count(), config.slab_length)?;
        let coeffs = compute_moments(&model, config.order, &fp);
        Ok(Self {
            mesh,
            model,
            coeffs,
            sweeper: Sweeper::new(mesh, quad, 1.0)?,
            half_source: ScalarField::constant(config.cells, 0.5 * config.source),
            scattering_ratio: config.c,
        })
    }

    pub fn quadrature(&self) -> &AngularQuadrature {
        self.sweeper.quadrature()
    }

    pub fn moments(&self) -> usize {
        self.coeffs.len()
    }
}
