//! Linear discontinuous Galerkin transport sweep over the Laguerre moment cascade.
//!
//! Each moment obeys `μ ψ_m' + σ ψ_m = q - Σ_{j<m} ψ_j` with vacuum inflow.
//! Within a cell the trial space is spanned by the two nodal hat functions
//! and the face value on the inflow side is taken from the upwind neighbour.
//! For μ > 0 the local system is
//!
//! ```text
//! [ |μ|/2 + σh/3    |μ|/2 + σh/6 ] [ψ_L]   h [2 1] [q_L]   [|μ| ψ_in]
//! [-|μ|/2 + σh/6    |μ|/2 + σh/3 ] [ψ_R] = - [1 2] [q_R] + [   0    ]
//!                                          6
//! ```
//!
//! and its mirror image for μ < 0. The matrix depends only on μ, σ and the
//! uniform width, so its inverse is formed once per direction.

use super::field::{MomentField, ScalarField};
use super::mesh::SpatialMesh;
use super::quadrature::AngularQuadrature;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
struct DirectionKernel {
    abs_mu: f64,
    forward: bool,
    inv: [[f64; 2]; 2],
}

impl DirectionKernel {
    fn new(mu: f64, sigma: f64, h: f64) -> Result<Self> {
        if mu == 0.0 || !mu.is_finite() {
            return Err(Error::Singular(
                "local DG system (direction cosine is zero)",
            ));
        }
        let a = mu.abs();
        let forward = mu > 0.0;
        let diag = 0.5 * a + sigma * h / 3.0;
        let (upper, lower) = if forward {
            (0.5 * a + sigma * h / 6.0, -0.5 * a + sigma * h / 6.0)
        } else {
            (-0.5 * a + sigma * h / 6.0, 0.5 * a + sigma * h / 6.0)
        };
        let det = diag * diag - upper * lower;
        if !(det.abs() > f64::MIN_POSITIVE) {
            return Err(Error::Singular("local DG system"));
        }
        Ok(Self {
            abs_mu: a,
            forward,
            inv: [[diag / det, -upper / det], [-lower / det, diag / det]],
        })
    }
}

/// Reusable sweep operator for one mesh, angular set, and total cross section.
#[derive(Debug, Clone)]
pub struct Sweeper {
    mesh: SpatialMesh,
    quad: AngularQuadrature,
    sigma: f64,
    kernels: Vec<DirectionKernel>,
}

impl Sweeper {
    /// `sigma` is the collision coefficient of the streaming operator: 1 for
    /// the transformed spectral equations, σ_t for the classical problem.
    pub fn new(mesh: SpatialMesh, quad: AngularQuadrature, sigma: f64) -> Result<Self> {
        if !(sigma >= 0.0) {
            return Err(Error::InvalidMesh(format!(
                "collision coefficient must be nonnegative, got {sigma}"
            )));
        }
        let h = mesh.width();
        let kernels = quad
            .mu()
            .iter()
            .map(|&mu| DirectionKernel::new(mu, sigma, h))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            mesh,
            quad,
            sigma,
            kernels,
        })
    }

    pub fn mesh(&self) -> &SpatialMesh {
        &self.mesh
    }

    pub fn quadrature(&self) -> &AngularQuadrature {
        &self.quad
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    /// Sweeps every direction with isotropic nodal source `source` and writes
    /// all moments of `field`. The number of moments is taken from `field`.
    pub fn sweep_into(&self, source: &ScalarField, field: &mut MomentField) -> Result<()> {
        let cells = self.mesh.cells();
        if source.cells() != cells {
            return Err(Error::DimensionMismatch {
                what: "source cells",
                expected: cells,
                found: source.cells(),
            });
        }
        field.check_shape(field.moments(), self.quad.len(), cells)?;

        let moments = field.moments();
        let h6 = self.mesh.width() / 6.0;
        let mut inflow = vec![0.0; moments];

        for (angle, kernel) in self.kernels.iter().enumerate() {
            inflow.fill(0.0);
            let [[i00, i01], [i10, i11]] = kernel.inv;
            for step in 0..cells {
                let cell = if kernel.forward {
                    step
                } else {
                    cells - 1 - step
                };
                let (s_l, s_r) = (source.left(cell), source.right(cell));
                let block = field.block_mut(angle, cell);
                let (mut acc_l, mut acc_r) = (0.0, 0.0);
                for m in 0..moments {
                    let q_l = s_l - acc_l;
                    let q_r = s_r - acc_r;
                    let mut b_l = h6 * (2.0 * q_l + q_r);
                    let mut b_r = h6 * (q_l + 2.0 * q_r);
                    if kernel.forward {
                        b_l += kernel.abs_mu * inflow[m];
                    } else {
                        b_r += kernel.abs_mu * inflow[m];
                    }
                    let psi_l = i00 * b_l + i01 * b_r;
                    let psi_r = i10 * b_l + i11 * b_r;
                    block[2 * m] = psi_l;
                    block[2 * m + 1] = psi_r;
                    inflow[m] = if kernel.forward { psi_r } else { psi_l };
                    acc_l += psi_l;
                    acc_r += psi_r;
                }
            }
        }
        Ok(())
    }

    pub fn sweep(&self, source: &ScalarField, moments: usize) -> Result<MomentField> {
        let mut field = MomentField::zeros(moments, self.quad.len(), self.mesh.cells());
        self.sweep_into(source, &mut field)?;
        Ok(field)
    }
}

/// One transport sweep of the spectral equations (unit collision coefficient)
/// for Laguerre orders `0..=order` with vacuum inflow.
pub fn cascade_sweep(
    mesh: &SpatialMesh,
    quad: &AngularQuadrature,
    order: usize,
    source: &ScalarField,
) -> Result<MomentField> {
    Sweeper::new(*mesh, quad.clone(), 1.0)?.sweep(source, order + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn setup(cells: usize, length: f64, n: usize) -> (SpatialMesh, AngularQuadrature) {
        (
            SpatialMesh::uniform(length, cells).unwrap(),
            AngularQuadrature::gauss_legendre(n).unwrap(),
        )
    }

    #[test]
    fn zero_source_gives_zero_field() {
        let (mesh, quad) = setup(10, 5.0, 4);
        let field = cascade_sweep(&mesh, &quad, 3, &ScalarField::zeros(10)).unwrap();
        assert!(field.values().iter().all(|&v| v == 0.0));
    }

    /// L2 norm over [0, X] of (ψ_h - exact), using a 4-point Gauss rule per cell.
    fn l2_error(mesh: &SpatialMesh, psi: &ScalarField, exact: impl Fn(f64) -> f64) -> f64 {
        let g = crate::discretization::quadrature::gauss_legendre(4, 0.0, 1.0).unwrap();
        let h = mesh.width();
        let mut acc = 0.0;
        for k in 0..mesh.cells() {
            for (&t, &w) in g.nodes.iter().zip(&g.weights) {
                let x = mesh.left(k) + t * h;
                let approx = psi.left(k) * (1.0 - t) + psi.right(k) * t;
                acc += w * h * (approx - exact(x)).powi(2);
            }
        }
        acc.sqrt()
    }

    #[test]
    fn attenuation_solution_converges_at_second_order() {
        let q = 0.7;
        let mut errors = Vec::new();
        for cells in [20usize, 40, 80, 160, 320] {
            let (mesh, quad) = setup(cells, 4.0, 8);
            let field = cascade_sweep(&mesh, &quad, 0, &ScalarField::constant(cells, q)).unwrap();
            let per_angle: Vec<f64> = (0..quad.len() / 2)
                .map(|n| {
                    let mu = quad.mu()[n];
                    l2_error(&mesh, &field.component(0, n), |x| {
                        q * (1.0 - (-x / mu).exp())
                    })
                })
                .collect();
            errors.push(per_angle);
        }
        for n in 0..errors[0].len() {
            for level in 1..errors.len() {
                let order = (errors[level - 1][n] / errors[level][n]).log2();
                let floor = if level + 1 == errors.len() { 1.95 } else { 1.8 };
                assert!(order >= floor, "angle {n}, level {level}: order {order}");
            }
        }
    }

    #[test]
    fn thick_slab_interior_reaches_infinite_medium_state() {
        let (mesh, quad) = setup(200, 120.0, 8);
        let q = 1.3;
        let field = cascade_sweep(&mesh, &quad, 5, &ScalarField::constant(200, q)).unwrap();
        for n in 0..quad.len() {
            for k in 95..105 {
                for node in 0..2 {
                    assert!((field.get(0, n, k, node) - q).abs() < 1e-10);
                    for m in 1..6 {
                        assert!(field.get(m, n, k, node).abs() < 1e-10);
                    }
                }
            }
        }
    }

    #[test]
    fn upwind_causality() {
        let (mesh, quad) = setup(12, 6.0, 4);
        let j = 5;
        let mut src = ScalarField::zeros(12);
        src.values_mut()[2 * j] = 1.0;
        src.values_mut()[2 * j + 1] = -0.4;
        let field = cascade_sweep(&mesh, &quad, 3, &src).unwrap();
        for n in 0..quad.len() {
            let forward = quad.mu()[n] > 0.0;
            for k in 0..12 {
                let upstream = if forward { k < j } else { k > j };
                if upstream {
                    assert!(field.block(n, k).iter().all(|&v| v == 0.0));
                }
            }
        }
    }

    #[test]
    fn rejects_mismatched_source() {
        let (mesh, quad) = setup(4, 1.0, 2);
        assert!(cascade_sweep(&mesh, &quad, 1, &ScalarField::zeros(5)).is_err());
    }

    fn random_field(cells: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-5.0f64..5.0, 2 * cells)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        /// The weak form tested against both hat functions vanishes cell by cell.
        #[test]
        fn local_weak_form_residual_vanishes(values in random_field(7), sigma in 0.1f64..3.0) {
            let (mesh, quad) = setup(7, 3.5, 4);
            let h = mesh.width();
            let sweeper = Sweeper::new(mesh, quad.clone(), sigma).unwrap();
            let src = ScalarField::from_nodal(values).unwrap();
            let moments = 4;
            let field = sweeper.sweep(&src, moments).unwrap();
            for (n, &mu) in quad.mu().iter().enumerate() {
                for k in 0..7 {
                    let (mut acc_l, mut acc_r) = (0.0, 0.0);
                    for m in 0..moments {
                        let (pl, pr) = (field.get(m, n, k, 0), field.get(m, n, k, 1));
                        let (ql, qr) = (src.left(k) - acc_l, src.right(k) - acc_r);
                        // upwind face values
                        let (face_l, face_r) = if mu > 0.0 {
                            let inflow = if k == 0 { 0.0 } else { field.get(m, n, k - 1, 1) };
                            (inflow, pr)
                        } else {
                            let inflow = if k == 6 { 0.0 } else { field.get(m, n, k + 1, 0) };
                            (pl, inflow)
                        };
                        // ∫ μ ψ' b_i = -∫ μ ψ b_i' + μ [ψ̂ b_i]
                        let stream_l = mu * (pl + pr) / 2.0 - mu * face_l;
                        let stream_r = -mu * (pl + pr) / 2.0 + mu * face_r;
                        let res_l = stream_l + sigma * h / 6.0 * (2.0 * pl + pr) - h / 6.0 * (2.0 * ql + qr);
                        let res_r = stream_r + sigma * h / 6.0 * (pl + 2.0 * pr) - h / 6.0 * (ql + 2.0 * qr);
                        let scale = 1.0 + pl.abs() + pr.abs() + ql.abs() + qr.abs();
                        prop_assert!(res_l.abs() < 1e-12 * scale);
                        prop_assert!(res_r.abs() < 1e-12 * scale);
                        acc_l += pl;
                        acc_r += pr;
                    }
                }
            }
        }

        #[test]
        fn sweep_is_linear(u in random_field(6), v in random_field(6), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
            let (mesh, quad) = setup(6, 2.0, 4);
            let u = ScalarField::from_nodal(u).unwrap();
            let v = ScalarField::from_nodal(v).unwrap();
            let combo = &(&u * alpha) + &(&v * beta);
            let fu = cascade_sweep(&mesh, &quad, 4, &u).unwrap();
            let fv = cascade_sweep(&mesh, &quad, 4, &v).unwrap();
            let fc = cascade_sweep(&mesh, &quad, 4, &combo).unwrap();
            let scale = fc.values().iter().fold(1.0f64, |a, b| a.max(b.abs()));
            for ((c, a), b) in fc.values().iter().zip(fu.values()).zip(fv.values()) {
                prop_assert!((c - (alpha * a + beta * b)).abs() <= 1e-12 * scale);
            }
        }
    }
}
