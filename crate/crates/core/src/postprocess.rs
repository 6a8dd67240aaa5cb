//! Classical quantities recovered from the Laguerre moments.

use crate::discretization::{weighted_angular_sum, AngularQuadrature, MomentField, ScalarField};
use crate::error::{Error, Result};
use crate::freepath::{FreePathModel, LaguerreBasis, MomentCoefficients};

fn check_order(field: &MomentField, coeffs: &MomentCoefficients) -> Result<()> {
    if field.moments() != coeffs.len() {
        return Err(Error::DimensionMismatch {
            what: "Laguerre moment count",
            expected: coeffs.len(),
            found: field.moments(),
        });
    }
    Ok(())
}

/// Ψ_{c,n}(x) = Σ_m r_m ψ_{m,n}(x) for every direction.
pub fn classical_angular_flux(
    field: &MomentField,
    coeffs: &MomentCoefficients,
) -> Result<Vec<ScalarField>> {
    check_order(field, coeffs)?;
    let cells = field.cells();
    Ok((0..field.angles())
        .map(|n| {
            let values = (0..cells)
                .flat_map(|k| {
                    let block = field.block(n, k);
                    let (mut l, mut r) = (0.0, 0.0);
                    for (pair, &w) in block.chunks_exact(2).zip(&coeffs.recovery) {
                        l += w * pair[0];
                        r += w * pair[1];
                    }
                    [l, r]
                })
                .collect();
            ScalarField::from_nodal(values).expect("two values per cell")
        })
        .collect())
}

/// Φ(x) = Σ_n ω_n Ψ_{c,n}(x)
pub fn scalar_flux(angular: &[ScalarField], quad: &AngularQuadrature) -> Result<ScalarField> {
    if angular.len() != quad.len() {
        return Err(Error::DimensionMismatch {
            what: "angular flux directions",
            expected: quad.len(),
            found: angular.len(),
        });
    }
    let cells = angular.first().map_or(0, ScalarField::cells);
    let mut phi = ScalarField::zeros(cells);
    for (psi, &w) in angular.iter().zip(quad.weights()) {
        if psi.cells() != cells {
            return Err(Error::DimensionMismatch {
                what: "angular flux cells",
                expected: cells,
                found: psi.cells(),
            });
        }
        phi.axpy(w, psi);
    }
    Ok(phi)
}

/// Φ(x) straight from the moments, without materialising per-angle fluxes.
pub fn scalar_flux_from_moments(
    field: &MomentField,
    quad: &AngularQuadrature,
    coeffs: &MomentCoefficients,
) -> Result<ScalarField> {
    let mut out = ScalarField::zeros(field.cells());
    weighted_angular_sum(field, quad.weights(), &coeffs.recovery, &mut out)?;
    Ok(out)
}

/// f(x) = Σ_n ω_n Σ_m c_m ψ_{m,n}(x)
pub fn collision_rate_density(
    field: &MomentField,
    quad: &AngularQuadrature,
    coeffs: &MomentCoefficients,
) -> Result<ScalarField> {
    let mut out = ScalarField::zeros(field.cells());
    weighted_angular_sum(field, quad.weights(), &coeffs.scattering, &mut out)?;
    Ok(out)
}

/// Nonclassical angular flux Ψ(x, μ_n, s) = [Σ_m ψ_{m,n}(x) L_m(s)] · survival(s)
/// at DG node `node` (0 = left, 1 = right) of `cell`.
pub fn reconstruct_nonclassical_flux(
    field: &MomentField,
    model: &FreePathModel,
    cell: usize,
    node: usize,
    angle: usize,
    s: f64,
) -> Result<f64> {
    let basis = LaguerreBasis::new(field.moments() - 1);
    let coeffs: Vec<f64> = (0..field.moments())
        .map(|m| field.get(m, angle, cell, node))
        .collect();
    Ok(basis.series(&coeffs, s)? * model.survival(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freepath::{compute_moments, FreePathQuadrature};
    use proptest::prelude::*;

    fn filled(
        moments: usize,
        angles: usize,
        cells: usize,
        f: impl Fn(usize, usize, usize, usize) -> f64,
    ) -> MomentField {
        let mut field = MomentField::zeros(moments, angles, cells);
        for m in 0..moments {
            for n in 0..angles {
                for k in 0..cells {
                    for node in 0..2 {
                        field.set(m, n, k, node, f(m, n, k, node));
                    }
                }
            }
        }
        field
    }

    fn smooth(m: usize, n: usize, k: usize, node: usize) -> f64 {
        let x = k as f64 + node as f64;
        (0.3 * x + n as f64).sin() / (1.0 + m as f64).powi(2)
    }

    #[test]
    fn exponential_recovery_keeps_only_zeroth_moment() {
        let model = FreePathModel::exponential(1.0).unwrap();
        let coeffs = compute_moments(&model, 4, &FreePathQuadrature::oracle(50.0).unwrap());
        let field = filled(5, 4, 3, smooth);
        let angular = classical_angular_flux(&field, &coeffs).unwrap();
        for n in 0..4 {
            let psi0 = field.component(0, n);
            for (a, b) in angular[n].values().iter().zip(psi0.values()) {
                assert!((a - b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_field_recovers_zero() {
        let model = FreePathModel::diffusion_mimic(1.0).unwrap();
        let coeffs = compute_moments(&model, 3, &FreePathQuadrature::oracle(10.0).unwrap());
        let quad = AngularQuadrature::gauss_legendre(4).unwrap();
        let field = MomentField::zeros(4, 4, 6);
        let angular = classical_angular_flux(&field, &coeffs).unwrap();
        assert!(scalar_flux(&angular, &quad)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0.0));
        assert!(collision_rate_density(&field, &quad, &coeffs)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0.0));
    }

    #[test]
    fn diffusion_mimic_recovery_of_unit_zeroth_moment() {
        let model = FreePathModel::diffusion_mimic(1.0).unwrap();
        let coeffs = compute_moments(&model, 3, &FreePathQuadrature::oracle(40.0).unwrap());
        let field = filled(4, 2, 3, |m, _, _, _| if m == 0 { 1.0 } else { 0.0 });
        let angular = classical_angular_flux(&field, &coeffs).unwrap();
        for psi in &angular {
            for &v in psi.values() {
                assert!((v - 2.0 / 3f64.sqrt()).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn scalar_flux_of_isotropic_flux() {
        let quad = AngularQuadrature::gauss_legendre(8).unwrap();
        let angular = vec![ScalarField::constant(5, 1.75); 8];
        let phi = scalar_flux(&angular, &quad).unwrap();
        assert!(phi.values().iter().all(|&v| (v - 3.5).abs() < 1e-13));
        assert!(scalar_flux(&angular[..4], &quad).is_err());
    }

    #[test]
    fn exponential_collision_rate_equals_scalar_flux() {
        let model = FreePathModel::exponential(1.0).unwrap();
        let coeffs = compute_moments(&model, 6, &FreePathQuadrature::oracle(30.0).unwrap());
        let quad = AngularQuadrature::gauss_legendre(4).unwrap();
        let field = filled(7, 4, 5, smooth);
        let f = collision_rate_density(&field, &quad, &coeffs).unwrap();
        let phi = scalar_flux_from_moments(&field, &quad, &coeffs).unwrap();
        let via_angles =
            scalar_flux(&classical_angular_flux(&field, &coeffs).unwrap(), &quad).unwrap();
        for ((a, b), c) in f.values().iter().zip(phi.values()).zip(via_angles.values()) {
            assert!((a - b).abs() < 1e-10);
            assert!((b - c).abs() < 1e-12);
        }
    }

    #[test]
    fn reconstruction_special_cases() {
        let model = FreePathModel::exponential(1.0).unwrap();
        let field = filled(4, 2, 3, smooth);
        let total: f64 = (0..4).map(|m| field.get(m, 1, 2, 0)).sum();
        let at_zero = reconstruct_nonclassical_flux(&field, &model, 2, 0, 1, 0.0).unwrap();
        assert!((at_zero - total).abs() < 1e-14);

        let single = filled(3, 2, 2, |m, _, _, _| if m == 0 { 0.6 } else { 0.0 });
        for s in [0.0, 0.5, 3.0] {
            let v = reconstruct_nonclassical_flux(&single, &model, 1, 1, 0, s).unwrap();
            assert!((v - 0.6 * (-s).exp()).abs() < 1e-15);
        }
        assert!(reconstruct_nonclassical_flux(&single, &model, 0, 0, 0, -1.0).is_err());
    }

    #[test]
    fn integrating_reconstruction_over_s_recovers_classical_flux() {
        let length = 20.0;
        let oracle = FreePathQuadrature::oracle(length).unwrap();
        let reference = FreePathQuadrature::new(120, length).unwrap();
        for model in [
            FreePathModel::exponential(1.3).unwrap(),
            FreePathModel::diffusion_mimic(0.8).unwrap(),
        ] {
            let coeffs = compute_moments(&model, 5, &reference);
            let field = filled(6, 2, 4, smooth);
            let angular = classical_angular_flux(&field, &coeffs).unwrap();
            for n in 0..2 {
                for k in 0..4 {
                    for node in 0..2 {
                        let integral = oracle.integrate(|s| {
                            reconstruct_nonclassical_flux(&field, &model, k, node, n, s).unwrap()
                        });
                        let direct = if node == 0 {
                            angular[n].left(k)
                        } else {
                            angular[n].right(k)
                        };
                        assert!((integral - direct).abs() <= 1e-6 * direct.abs().max(1e-3));
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn recovery_maps_are_linear(a in prop::collection::vec(-2.0f64..2.0, 48), b in prop::collection::vec(-2.0f64..2.0, 48), alpha in -2.0f64..2.0) {
            let model = FreePathModel::diffusion_mimic(1.0).unwrap();
            let coeffs = compute_moments(&model, 2, &FreePathQuadrature::oracle(10.0).unwrap());
            let quad = AngularQuadrature::gauss_legendre(4).unwrap();
            let mut fa = MomentField::zeros(3, 4, 2);
            let mut fb = fa.clone();
            fa.values_mut().copy_from_slice(&a);
            fb.values_mut().copy_from_slice(&b);
            let mut fc = fa.clone();
            for (c, y) in fc.values_mut().iter_mut().zip(fb.values()) {
                *c = alpha * *c + y;
            }
            let maps = |f: &MomentField| {
                let phi = scalar_flux(&classical_angular_flux(f, &coeffs).unwrap(), &quad).unwrap();
                let rate = collision_rate_density(f, &quad, &coeffs).unwrap();
                (phi, rate)
            };
            let (pa, ra) = maps(&fa);
            let (pb, rb) = maps(&fb);
            let (pc, rc) = maps(&fc);
            for i in 0..pc.len() {
                prop_assert!((pc.values()[i] - (alpha * pa.values()[i] + pb.values()[i])).abs() < 1e-12);
                prop_assert!((rc.values()[i] - (alpha * ra.values()[i] + rb.values()[i])).abs() < 1e-12);
            }
        }
    }
}
