//! Flat key-value problem files and command-line overrides.

use std::path::Path;

use clap::Args;
use serde::{Deserialize, Serialize};

use ncsn_core::{FreePathKind, ProblemConfig, SolverKind, StoppingNorm};

use crate::CliError;

/// Every configuration key, all optional. Used both as the on-disk format
/// and as the flag set, so flags and keys cannot drift apart.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    /// Slab length X.
    #[serde(rename = "x", alias = "X", skip_serializing_if = "Option::is_none")]
    #[arg(long = "x", alias = "X")]
    pub slab_length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long)]
    pub cells: Option<usize>,
    /// Number of discrete ordinates N.
    #[serde(rename = "n", alias = "N", skip_serializing_if = "Option::is_none")]
    #[arg(long = "n", alias = "N")]
    pub angles: Option<usize>,
    /// Laguerre truncation order M.
    #[serde(rename = "m", alias = "M", skip_serializing_if = "Option::is_none")]
    #[arg(long = "m", alias = "M")]
    pub order: Option<usize>,
    /// Scattering ratio.
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long)]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long = "sigma_t", alias = "sigma-t")]
    pub sigma_t: Option<f64>,
    /// exponential | diffusion_mimic
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long)]
    pub model: Option<FreePathKind>,
    /// Constant internal source Q.
    #[serde(rename = "q", alias = "Q", skip_serializing_if = "Option::is_none")]
    #[arg(long = "q", alias = "Q")]
    pub source: Option<f64>,
    /// Stopping tolerance.
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long)]
    pub xi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long = "max_iterations", alias = "max-iterations")]
    pub max_iterations: Option<usize>,
    /// si | s2sa
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long)]
    pub solver: Option<SolverKind>,
    /// Free-path quadrature nodes (defaults to M).
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long = "freepath_nodes", alias = "freepath-nodes")]
    pub freepath_nodes: Option<usize>,
    /// l2 | pointwise
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long = "stopping_norm", alias = "stopping-norm")]
    pub stopping_norm: Option<StoppingNorm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    #[arg(long = "low_order_angles", alias = "low-order-angles")]
    pub low_order_angles: Option<usize>,
}

macro_rules! overlay {
    ($base:expr, $top:expr, $($field:ident),*) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field; } )*
    };
}

fn required<T>(value: Option<T>, key: &'static str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Config(format!("missing required key '{key}'")))
}

impl PartialConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.message().to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Values set in `other` replace those in `self`.
    pub fn merge(mut self, other: &PartialConfig) -> Self {
        overlay!(
            self,
            other,
            slab_length,
            cells,
            angles,
            order,
            c,
            sigma_t,
            model,
            source,
            xi,
            max_iterations,
            solver,
            freepath_nodes,
            stopping_norm,
            low_order_angles
        );
        self
    }

    /// Fills defaults, checks required keys and validates ranges.
    pub fn resolve(self) -> Result<ProblemConfig, CliError> {
        let config = ProblemConfig {
            slab_length: required(self.slab_length, "x")?,
            cells: required(self.cells, "cells")?,
            angles: required(self.angles, "n")?,
            order: required(self.order, "m")?,
            c: required(self.c, "c")?,
            sigma_t: required(self.sigma_t, "sigma_t")?,
            model: required(self.model, "model")?,
            source: required(self.source, "q")?,
            xi: required(self.xi, "xi")?,
            max_iterations: self
                .max_iterations
                .unwrap_or(ncsn_core::solver::config::DEFAULT_MAX_ITERATIONS),
            solver: required(self.solver, "solver")?,
            freepath_nodes: self.freepath_nodes,
            stopping_norm: self.stopping_norm.unwrap_or_default(),
            low_order_angles: self
                .low_order_angles
                .unwrap_or(ncsn_core::solver::config::DEFAULT_LOW_ORDER_ANGLES),
        };
        config.validate()?;
        Ok(config)
    }
}

impl From<&ProblemConfig> for PartialConfig {
    fn from(c: &ProblemConfig) -> Self {
        Self {
            slab_length: Some(c.slab_length),
            cells: Some(c.cells),
            angles: Some(c.angles),
            order: Some(c.order),
            c: Some(c.c),
            sigma_t: Some(c.sigma_t),
            model: Some(c.model),
            source: Some(c.source),
            xi: Some(c.xi),
            max_iterations: Some(c.max_iterations),
            solver: Some(c.solver),
            freepath_nodes: c.freepath_nodes,
            stopping_norm: Some(c.stopping_norm),
            low_order_angles: Some(c.low_order_angles),
        }
    }
}

/// Reads `file` (if any), applies `flags` on top and validates.
pub fn load_config(file: Option<&Path>, flags: &PartialConfig) -> Result<ProblemConfig, CliError> {
    let base = match file {
        Some(path) => PartialConfig::from_file(path)?,
        None => PartialConfig::default(),
    };
    base.merge(flags).resolve()
}

pub fn emit_config(config: &ProblemConfig) -> String {
    toml::to_string(config).expect("problem config is plain data")
}
