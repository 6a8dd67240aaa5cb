//! Spatial mesh, angular quadrature, and the DG transport sweep.

pub mod field;
pub mod mesh;
pub mod quadrature;
pub mod sweep;

pub use field::{MomentField, ScalarField};
pub use mesh::SpatialMesh;
pub use quadrature::{gauss_legendre, AngularQuadrature, Rule};
pub use sweep::{cascade_sweep, Sweeper};

use crate::error::{Error, Result};
use crate::freepath::MomentCoefficients;

/// Nodal Σ_n ω_n Σ_k w_k ψ_{k,n}, written into `out`.
pub(crate) fn weighted_angular_sum(
    field: &MomentField,
    angle_weights: &[f64],
    moment_weights: &[f64],
    out: &mut ScalarField,
) -> Result<()> {
    let cells = field.cells();
    field.check_shape(moment_weights.len(), angle_weights.len(), cells)?;
    if out.cells() != cells {
        return Err(Error::DimensionMismatch {
            what: "output cells",
            expected: cells,
            found: out.cells(),
        });
    }
    out.fill(0.0);
    let dst = out.values_mut();
    for (angle, &w) in angle_weights.iter().enumerate() {
        for cell in 0..cells {
            let block = field.block(angle, cell);
            let (mut l, mut r) = (0.0, 0.0);
            for (pair, &c) in block.chunks_exact(2).zip(moment_weights) {
                l += c * pair[0];
                r += c * pair[1];
            }
            dst[2 * cell] += w * l;
            dst[2 * cell + 1] += w * r;
        }
    }
    Ok(())
}

/// S(x) = (c/2) Σ_n ω_n Σ_k c_k ψ_{k,n}(x)
pub fn scattering_source(
    field: &MomentField,
    quad: &AngularQuadrature,
    coeffs: &MomentCoefficients,
    scattering_ratio: f64,
) -> Result<ScalarField> {
    let mut out = ScalarField::zeros(field.cells());
    scattering_source_into(field, quad, coeffs, scattering_ratio, &mut out)?;
    Ok(out)
}

pub(crate) fn scattering_source_into(
    field: &MomentField,
    quad: &AngularQuadrature,
    coeffs: &MomentCoefficients,
    scattering_ratio: f64,
    out: &mut ScalarField,
) -> Result<()> {
    weighted_angular_sum(field, quad.weights(), &coeffs.scattering, out)?;
    let half_c = 0.5 * scattering_ratio;
    out.values_mut().iter_mut().for_each(|v| *v *= half_c);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(n: usize) -> MomentCoefficients {
        MomentCoefficients {
            scattering: (0..n).map(|k| 0.5f64.powi(k as i32)).collect(),
            recovery: vec![0.0; n],
        }
    }

    #[test]
    fn scattering_source_trivial_cases() {
        let quad = AngularQuadrature::gauss_legendre(4).unwrap();
        let zero = MomentField::zeros(3, 4, 5);
        let s = scattering_source(&zero, &quad, &coeffs(3), 0.9).unwrap();
        assert!(s.values().iter().all(|&v| v == 0.0));

        let mut field = MomentField::zeros(3, 4, 5);
        field
            .values_mut()
            .iter_mut()
            .enumerate()
            .for_each(|(i, v)| *v = i as f64);
        let s = scattering_source(&field, &quad, &coeffs(3), 0.0).unwrap();
        assert!(s.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn isotropic_zeroth_moment_gives_c_times_amplitude() {
        let quad = AngularQuadrature::gauss_legendre(16).unwrap();
        let a = 2.5;
        let mut field = MomentField::zeros(4, 16, 6);
        for n in 0..16 {
            for k in 0..6 {
                field.set(0, n, k, 0, a);
                field.set(0, n, k, 1, a);
            }
        }
        let mut c = coeffs(4);
        c.scattering[0] = 1.0;
        let s = scattering_source(&field, &quad, &c, 0.8).unwrap();
        assert!(s.values().iter().all(|&v| (v - 0.8 * a).abs() < 1e-13));
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let quad = AngularQuadrature::gauss_legendre(4).unwrap();
        let field = MomentField::zeros(3, 4, 5);
        assert!(scattering_source(&field, &quad, &coeffs(2), 0.5).is_err());
    }
}
