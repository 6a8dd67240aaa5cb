//! Free-path distributions and the Laguerre integrals that couple the
//! free-path variable s into the spectral equations.
//!
//! A model is described by its free-path density p(s), the nonclassical
//! cross section Σ_t(s), and the survival function
//! `exp(-∫₀^s Σ_t(s') ds')`, linked by `p(s) = Σ_t(s) · survival(s)`.

use serde::{Deserialize, Serialize};

use crate::discretization::quadrature::{gauss_legendre, Rule};
use crate::error::{Error, Result};

/// Ratio between the truncated free-path domain and the slab length.
pub const TRUNCATION_FACTOR: f64 = 1.5;

/// Node count of the high-order reference rule on the truncated domain.
pub const ORACLE_NODES: usize = 256;

const SQRT_3: f64 = 1.732_050_807_568_877_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreePathKind {
    /// p(s) = σ_t e^{-σ_t s}; reproduces classical transport.
    Exponential,
    /// p(s) = 3σ_t² s e^{-√3 σ_t s}; its collision rate reproduces diffusion.
    DiffusionMimic,
}

impl FreePathKind {
    pub fn name(self) -> &'static str {
        match self {
            FreePathKind::Exponential => "exponential",
            FreePathKind::DiffusionMimic => "diffusion_mimic",
        }
    }
}

impl std::str::FromStr for FreePathKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "exponential" => Ok(FreePathKind::Exponential),
            "diffusion_mimic" => Ok(FreePathKind::DiffusionMimic),
            other => Err(format!(
                "unknown model '{other}' (expected 'exponential' or 'diffusion_mimic')"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreePathModel {
    kind: FreePathKind,
    sigma_t: f64,
}

impl FreePathModel {
    pub fn new(kind: FreePathKind, sigma_t: f64) -> Result<Self> {
        if !(sigma_t > 0.0) || !sigma_t.is_finite() {
            return Err(Error::config(
                "sigma_t",
                format!("must be positive and finite, got {sigma_t}"),
            ));
        }
        Ok(Self { kind, sigma_t })
    }

    pub fn exponential(sigma_t: f64) -> Result<Self> {
        Self::new(FreePathKind::Exponential, sigma_t)
    }

    pub fn diffusion_mimic(sigma_t: f64) -> Result<Self> {
        Self::new(FreePathKind::DiffusionMimic, sigma_t)
    }

    pub fn kind(&self) -> FreePathKind {
        self.kind
    }

    pub fn sigma_t(&self) -> f64 {
        self.sigma_t
    }

    /// Free-path density p(s).
    pub fn density(&self, s: f64) -> f64 {
        debug_assert!(s >= 0.0);
        let st = self.sigma_t;
        match self.kind {
            FreePathKind::Exponential => st * (-st * s).exp(),
            FreePathKind::DiffusionMimic => 3.0 * st * st * s * (-SQRT_3 * st * s).exp(),
        }
    }

    /// Nonclassical total cross section Σ_t(s) = p(s) / ∫_s^∞ p.
    pub fn cross_section(&self, s: f64) -> f64 {
        debug_assert!(s >= 0.0);
        let st = self.sigma_t;
        match self.kind {
            FreePathKind::Exponential => st,
            FreePathKind::DiffusionMimic => 3.0 * st * st * s / (1.0 + SQRT_3 * st * s),
        }
    }

    /// exp(-∫₀^s Σ_t), in closed form.
    pub fn survival(&self, s: f64) -> f64 {
        debug_assert!(s >= 0.0);
        let st = self.sigma_t;
        match self.kind {
            FreePathKind::Exponential => (-st * s).exp(),
            FreePathKind::DiffusionMimic => {
                let a = SQRT_3 * st * s;
                (1.0 + a) * (-a).exp()
            }
        }
    }

    /// ∫ s p(s) ds over the full half line.
    pub fn mean_free_path(&self) -> f64 {
        match self.kind {
            FreePathKind::Exponential => 1.0 / self.sigma_t,
            FreePathKind::DiffusionMimic => 2.0 / (SQRT_3 * self.sigma_t),
        }
    }
}

/// Laguerre polynomial L_m(s) for s ≥ 0.
pub fn laguerre_eval(m: usize, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::NegativeFreePath(s));
    }
    let mut values = vec![0.0; m + 1];
    laguerre_fill(s, &mut values);
    Ok(values[m])
}

/// Writes L_0(s), ..., L_{len-1}(s) using the upward recurrence
/// (m+1) L_{m+1} = (2m+1-s) L_m - m L_{m-1}.
pub(crate) fn laguerre_fill(s: f64, out: &mut [f64]) {
    if out.is_empty() {
        return;
    }
    out[0] = 1.0;
    if out.len() > 1 {
        out[1] = 1.0 - s;
    }
    for m in 1..out.len().saturating_sub(1) {
        let mf = m as f64;
        out[m + 1] = ((2.0 * mf + 1.0 - s) * out[m] - mf * out[m - 1]) / (mf + 1.0);
    }
}

/// The Laguerre family L_0..L_M used to expand the transformed flux in s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LaguerreBasis {
    order: usize,
}

impl LaguerreBasis {
    pub fn new(order: usize) -> Self {
        Self { order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.order + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn eval(&self, s: f64) -> Result<Vec<f64>> {
        if !(s >= 0.0) {
            return Err(Error::NegativeFreePath(s));
        }
        let mut out = vec![0.0; self.len()];
        laguerre_fill(s, &mut out);
        Ok(out)
    }

    /// Σ_m coefficients[m] L_m(s)
    pub fn series(&self, coefficients: &[f64], s: f64) -> Result<f64> {
        Ok(self
            .eval(s)?
            .iter()
            .zip(coefficients)
            .map(|(l, c)| l * c)
            .sum())
    }
}

/// Gauss-Legendre rule on the truncated free-path domain `[0, 1.5 X]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreePathQuadrature {
    rule: Rule,
    upper: f64,
}

impl FreePathQuadrature {
    pub fn new(nodes: usize, slab_length: f64) -> Result<Self> {
        if nodes < 1 {
            return Err(Error::InvalidQuadrature(
                "free-path quadrature needs at least one node".into(),
            ));
        }
        let upper = TRUNCATION_FACTOR * slab_length;
        if !(upper > 0.0) || !upper.is_finite() {
            return Err(Error::InvalidQuadrature(format!(
                "truncated free-path domain [0, {upper}] is empty"
            )));
        }
        Ok(Self {
            rule: gauss_legendre(nodes, 0.0, upper)?,
            upper,
        })
    }

    /// High-order reference rule on the same domain.
    pub fn oracle(slab_length: f64) -> Result<Self> {
        Self::new(ORACLE_NODES, slab_length)
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.rule.integrate(f)
    }
}

/// Free-path integrals shared by the sweep source and flux recovery.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentCoefficients {
    /// c_k = ∫ p(s) L_k(s) ds
    pub scattering: Vec<f64>,
    /// r_m = ∫ L_m(s) survival(s) ds
    pub recovery: Vec<f64>,
}

impl MomentCoefficients {
    pub fn order(&self) -> usize {
        self.scattering.len() - 1
    }

    pub fn len(&self) -> usize {
        self.scattering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scattering.is_empty()
    }
}

/// Evaluates c_k and r_m for k, m = 0..=order with the given rule.
pub fn compute_moments(
    model: &FreePathModel,
    order: usize,
    quad: &FreePathQuadrature,
) -> MomentCoefficients {
    let mut scattering = vec![0.0; order + 1];
    let mut recovery = vec![0.0; order + 1];
    let mut lag = vec![0.0; order + 1];
    for (&s, &w) in quad.rule.nodes.iter().zip(&quad.rule.weights) {
        laguerre_fill(s, &mut lag);
        let wp = w * model.density(s);
        let ws = w * model.survival(s);
        for (k, &l) in lag.iter().enumerate() {
            scattering[k] += wp * l;
            recovery[k] += ws * l;
        }
    }
    MomentCoefficients {
        scattering,
        recovery,
    }
}
