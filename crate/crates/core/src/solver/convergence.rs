//! Stopping test and iteration-history bookkeeping shared by all iterative solvers.

use super::config::StoppingNorm;
use crate::discretization::ScalarField;
use crate::error::{Error, Result};

const ZERO_GUARD: f64 = 1e-300;

/// Relative change between successive scalar-flux iterates.
pub fn relative_deviation(new: &ScalarField, old: &ScalarField, norm: StoppingNorm) -> Result<f64> {
    if new.len() != old.len() {
        return Err(Error::DimensionMismatch {
            what: "scalar flux nodes",
            expected: old.len(),
            found: new.len(),
        });
    }
    match norm {
        StoppingNorm::Pointwise => {
            let mut worst = 0.0f64;
            for (i, (&a, &b)) in new.values().iter().zip(old.values()).enumerate() {
                let diff = (a - b).abs();
                if diff == 0.0 {
                    continue;
                }
                if b.abs() < ZERO_GUARD {
                    return Err(Error::ZeroReference { index: i });
                }
                worst = worst.max(diff / b.abs());
            }
            Ok(worst)
        }
        StoppingNorm::L2 => {
            let diff = (new - old).norm_l2();
            if diff == 0.0 {
                return Ok(0.0);
            }
            let reference = old.norm_l2();
            if reference < ZERO_GUARD {
                return Err(Error::ZeroReference { index: 0 });
            }
            Ok(diff / reference)
        }
    }
}

/// True when every grid point changed by at most `xi` relative to `old`.
pub fn stopping_check(new: &ScalarField, old: &ScalarField, xi: f64) -> Result<bool> {
    Ok(relative_deviation(new, old, StoppingNorm::Pointwise)? <= xi)
}

/// Asymptotic error-reduction factor from the last two entries of
/// `difference_norms` (‖Φ^{i+1} - Φ^i‖₂ per iteration).
///
/// Returns `None` with fewer than three entries or if the denominator
/// underflows.
pub fn spectral_radius_estimate(difference_norms: &[f64]) -> Option<f64> {
    let n = difference_norms.len();
    if n < 3 {
        return None;
    }
    let (prev, last) = (difference_norms[n - 2], difference_norms[n - 1]);
    if !(prev.abs() >= f64::MIN_POSITIVE) {
        return None;
    }
    Some(last / prev)
}

/// Tracks the iterate history of one run.
#[derive(Debug, Clone)]
pub(crate) struct Monitor {
    xi: f64,
    norm: StoppingNorm,
    previous: Option<ScalarField>,
    pub deviations: Vec<f64>,
    pub difference_norms: Vec<f64>,
}

impl Monitor {
    pub fn new(xi: f64, norm: StoppingNorm) -> Self {
        Self {
            xi,
            norm,
            previous: None,
            deviations: Vec::new(),
            difference_norms: Vec::new(),
        }
    }

    /// Records the newest flux estimate; returns whether the run has converged.
    /// The first iterate is compared against the zero initial guess and never
    /// counts as converged.
    pub fn record(&mut self, phi: &ScalarField) -> Result<bool> {
        let converged = match &self.previous {
            None => {
                self.deviations.push(f64::INFINITY);
                self.difference_norms.push(phi.norm_l2());
                false
            }
            Some(old) => {
                let dev = relative_deviation(phi, old, self.norm)?;
                self.deviations.push(dev);
                self.difference_norms.push((phi - old).norm_l2());
                dev <= self.xi
            }
        };
        self.previous = Some(phi.clone());
        Ok(converged)
    }

    pub fn iterations(&self) -> usize {
        self.deviations.len()
    }

    pub fn spectral_radius(&self) -> Option<f64> {
        spectral_radius_estimate(&self.difference_norms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(v: Vec<f64>) -> ScalarField {
        ScalarField::from_nodal(v).unwrap()
    }

    #[test]
    fn identical_fields_pass() {
        let a = field(vec![1.0, 2.0, 3.0, 0.0]);
        assert!(stopping_check(&a, &a, 1e-12).unwrap());
    }

    #[test]
    fn deviation_just_above_tolerance_fails() {
        let old = field(vec![1e6, 2e6]);
        let new = field(vec![1e6 + 2.0, 2e6 + 4.0]);
        assert!(!stopping_check(&new, &old, 1e-6).unwrap());
    }

    #[test]
    fn deviation_at_tolerance_passes() {
        // 1 / 1e6 and 2 / 2e6 both round to the literal 1e-6
        let old = field(vec![1e6, 2e6]);
        let new = field(vec![1e6 + 1.0, 2e6 + 2.0]);
        assert!(stopping_check(&new, &old, 1e-6).unwrap());
    }

    #[test]
    fn zero_reference_with_change_is_an_error() {
        let old = field(vec![0.0, 1.0]);
        let new = field(vec![1e-3, 1.0]);
        assert!(matches!(
            stopping_check(&new, &old, 1e-6),
            Err(Error::ZeroReference { index: 0 })
        ));
        // unchanged zeros are fine
        assert!(stopping_check(&old, &old, 1e-6).unwrap());
    }

    #[test]
    fn l2_variant() {
        let old = field(vec![3.0, 4.0]);
        let new = field(vec![3.0, 4.5]);
        let dev = relative_deviation(&new, &old, StoppingNorm::L2).unwrap();
        assert!((dev - 0.1).abs() < 1e-15);
    }

    #[test]
    fn geometric_history() {
        let norms: Vec<f64> = (0..12).map(|i| 0.8f64.powi(i)).collect();
        let rho = spectral_radius_estimate(&norms).unwrap();
        assert!((rho - 0.8).abs() < 1e-14);
        assert_eq!(spectral_radius_estimate(&norms[..2]), None);
        assert_eq!(spectral_radius_estimate(&[1.0, 0.0, 0.0]), None);
    }

    #[test]
    fn monitor_counts_iterations() {
        let mut m = Monitor::new(1e-6, StoppingNorm::Pointwise);
        let a = field(vec![1.0, 1.0]);
        assert!(!m.record(&a).unwrap());
        assert!(m.record(&a).unwrap());
        assert_eq!(m.iterations(), 2);
        assert_eq!(m.deviations[1], 0.0);
    }
}
