use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freepath::FreePathKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    /// Plain source iteration: one sweep per iteration.
    Si,
    /// Source iteration corrected each step by an S2 error solve.
    S2sa,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Si => "si",
            SolverKind::S2sa => "s2sa",
        }
    }
}

impl std::str::FromStr for SolverKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "si" => Ok(SolverKind::Si),
            "s2sa" => Ok(SolverKind::S2sa),
            other => Err(format!(
                "unknown solver '{other}' (expected 'si' or 's2sa')"
            )),
        }
    }
}

/// How successive scalar-flux iterates are compared by the stopping test.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StoppingNorm {
    /// max_i |Φ_new - Φ_old| / |Φ_old| over all grid points.
    Pointwise,
    /// ‖Φ_new - Φ_old‖₂ / ‖Φ_old‖₂ over the nodal values.
    #[default]
    L2,
}

impl std::str::FromStr for StoppingNorm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pointwise" => Ok(StoppingNorm::Pointwise),
            "l2" => Ok(StoppingNorm::L2),
            other => Err(format!(
                "unknown stopping norm '{other}' (expected 'pointwise' or 'l2')"
            )),
        }
    }
}

pub const DEFAULT_MAX_ITERATIONS: usize = 100_000;
pub const DEFAULT_LOW_ORDER_ANGLES: usize = 2;

fn default_max_iterations() -> usize {
    DEFAULT_MAX_ITERATIONS
}

fn default_low_order_angles() -> usize {
    DEFAULT_LOW_ORDER_ANGLES
}

/// Complete description of one slab problem and how to iterate on it.
///
/// Keys serialise in lowercase (`x`, `n`, `m`, `q`); the upper-case spellings
/// are accepted on input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    /// Slab length X in mean free paths.
    #[serde(rename = "x", alias = "X")]
    pub slab_length: f64,
    pub cells: usize,
    /// Number of discrete ordinates N of the high-order sweep.
    #[serde(rename = "n", alias = "N")]
    pub angles: usize,
    /// Laguerre truncation order M.
    #[serde(rename = "m", alias = "M")]
    pub order: usize,
    /// Scattering ratio.
    pub c: f64,
    pub sigma_t: f64,
    pub model: FreePathKind,
    /// Isotropic internal source Q (spatially constant).
    #[serde(rename = "q", alias = "Q")]
    pub source: f64,
    /// Stopping tolerance ξ.
    pub xi: f64,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: usize,
    pub solver: SolverKind,
    /// Free-path quadrature nodes on [0, 1.5 X]; `None` means M.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub freepath_nodes: Option<usize>,
    #[serde(default)]
    pub stopping_norm: StoppingNorm,
    /// Ordinates of the low-order error equation. Only S2 is supported.
    #[serde(default = "default_low_order_angles")]
    pub low_order_angles: usize,
}

impl ProblemConfig {
    /// Thick-slab iteration study: X = 200, 200 cells, S16, M = 50, σ_t = Q = 1, ξ = 1e-6.
    pub fn thick_slab(model: FreePathKind, c: f64, solver: SolverKind) -> Self {
        Self {
            slab_length: 200.0,
            cells: 200,
            angles: 16,
            order: 50,
            c,
            sigma_t: 1.0,
            model,
            source: 1.0,
            xi: 1e-6,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            solver,
            freepath_nodes: None,
            stopping_norm: StoppingNorm::L2,
            low_order_angles: DEFAULT_LOW_ORDER_ANGLES,
        }
    }

    /// Flux-profile comparison: X = 20, 200 cells, S16, M = 10, c = 0.999, σ_t = Q = 1.
    pub fn thin_slab(model: FreePathKind, solver: SolverKind) -> Self {
        Self {
            slab_length: 20.0,
            order: 10,
            c: 0.999,
            ..Self::thick_slab(model, 0.999, solver)
        }
    }

    pub fn freepath_node_count(&self) -> usize {
        self.freepath_nodes.unwrap_or(self.order)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.slab_length > 0.0) || !self.slab_length.is_finite() {
            return Err(Error::config("x", "X must be positive and finite"));
        }
        if self.cells == 0 {
            return Err(Error::config("cells", "cells must be at least 1"));
        }
        if self.angles == 0 {
            return Err(Error::config("n", "N must be positive"));
        }
        if self.angles % 2 != 0 {
            return Err(Error::config("n", "N must be even"));
        }
        if !(0.0..1.0).contains(&self.c) {
            return Err(Error::config("c", "c must lie in [0,1)"));
        }
        if !(self.sigma_t > 0.0) || !self.sigma_t.is_finite() {
            return Err(Error::config(
                "sigma_t",
                "sigma_t must be positive and finite",
            ));
        }
        if !self.source.is_finite() {
            return Err(Error::config("q", "Q must be finite"));
        }
        if !(self.xi > 0.0) || !self.xi.is_finite() {
            return Err(Error::config("xi", "xi must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(Error::config(
                "max_iterations",
                "max_iterations must be at least 1",
            ));
        }
        if self.freepath_node_count() == 0 {
            return Err(Error::config(
                "freepath_nodes",
                "free-path quadrature needs at least one node (set freepath_nodes when M = 0)",
            ));
        }
        if self.low_order_angles != 2 {
            return Err(Error::config(
                "low_order_angles",
                "only the S2 low-order operator is supported",
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ProblemConfig {
        ProblemConfig::thin_slab(FreePathKind::Exponential, SolverKind::Si)
    }

    fn reason(cfg: &ProblemConfig) -> (String, String) {
        match cfg.validate().unwrap_err() {
            Error::InvalidConfig { key, reason } => (key.to_string(), reason),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn presets_are_valid() {
        base().validate().unwrap();
        ProblemConfig::thick_slab(FreePathKind::DiffusionMimic, 0.999, SolverKind::S2sa)
            .validate()
            .unwrap();
        assert_eq!(base().freepath_node_count(), 10);
    }

    #[test]
    fn rejects_out_of_range_values() {
        let cfg = ProblemConfig { c: 1.0, ..base() };
        assert_eq!(reason(&cfg), ("c".into(), "c must lie in [0,1)".into()));
        let cfg = ProblemConfig {
            angles: 3,
            ..base()
        };
        assert_eq!(reason(&cfg), ("n".into(), "N must be even".into()));
        let cfg = ProblemConfig {
            low_order_angles: 4,
            ..base()
        };
        assert_eq!(reason(&cfg).0, "low_order_angles");
        let cfg = ProblemConfig { xi: 0.0, ..base() };
        assert_eq!(reason(&cfg).0, "xi");
        let cfg = ProblemConfig { order: 0, ..base() };
        assert_eq!(reason(&cfg).0, "freepath_nodes");
        let cfg = ProblemConfig { c: -0.1, ..base() };
        assert_eq!(reason(&cfg).0, "c");
    }
}
