//! Independent verification solvers: classical S_N source iteration and
//! one-group slab diffusion with Marshak boundary conditions.

use crate::discretization::{AngularQuadrature, MomentField, ScalarField, SpatialMesh, Sweeper};
use crate::error::{Error, Result};
use crate::solver::convergence::Monitor;
use crate::solver::StoppingNorm;

/// Homogeneous slab for the classical S_N reference problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalProblem {
    pub slab_length: f64,
    pub cells: usize,
    pub angles: usize,
    pub sigma_t: f64,
    pub c: f64,
    pub source: f64,
    pub xi: f64,
    pub max_iterations: usize,
}

#[derive(Debug, Clone)]
pub struct ClassicalSolution {
    /// Ψ_n(x) for every ordinate, in angular-quadrature order.
    pub angular: Vec<ScalarField>,
    pub scalar_flux: ScalarField,
    pub converged: bool,
    pub iterations: usize,
    pub spectral_radius: Option<f64>,
    pub difference_norms: Vec<f64>,
}

impl ClassicalSolution {
    /// Σ_n ω_n μ_n [Ψ_n(X) - Ψ_n(0)] using the upwind (outgoing) edge values.
    pub fn leakage(&self, quad: &AngularQuadrature) -> f64 {
        quad.iter()
            .zip(&self.angular)
            .map(|((mu, w), psi)| {
                let cells = psi.cells();
                if mu > 0.0 {
                    w * mu * psi.right(cells - 1)
                } else {
                    -w * mu * psi.left(0)
                }
            })
            .sum()
    }
}

/// Source-iterated DG solution of
/// `μ_n Ψ_n' + σ_t Ψ_n = (c/2) σ_t Σ ω Ψ + Q/2` with vacuum boundaries.
pub fn classical_sn_solve(problem: &ClassicalProblem) -> Result<ClassicalSolution> {
    if !(0.0..1.0).contains(&problem.c) {
        return Err(Error::config("c", "c must lie in [0,1)"));
    }
    let mesh = SpatialMesh::uniform(problem.slab_length, problem.cells)?;
    let quad = AngularQuadrature::gauss_legendre(problem.angles)?;
    let sweeper = Sweeper::new(mesh, quad.clone(), problem.sigma_t)?;
    let half_source = ScalarField::constant(problem.cells, 0.5 * problem.source);
    let scatter_factor = 0.5 * problem.c * problem.sigma_t;

    let mut field = MomentField::zeros(1, quad.len(), problem.cells);
    let mut phi = ScalarField::zeros(problem.cells);
    let mut monitor = Monitor::new(problem.xi, StoppingNorm::Pointwise);
    let mut converged = false;
    for _ in 0..problem.max_iterations {
        let source = &(&phi * scatter_factor) + &half_source;
        sweeper.sweep_into(&source, &mut field)?;
        phi = ScalarField::zeros(problem.cells);
        for (n, &w) in quad.weights().iter().enumerate() {
            phi.axpy(w, &field.component(0, n));
        }
        if monitor.record(&phi)? {
            converged = true;
            break;
        }
    }
    Ok(ClassicalSolution {
        angular: (0..quad.len()).map(|n| field.component(0, n)).collect(),
        scalar_flux: phi,
        converged,
        iterations: monitor.iterations(),
        spectral_radius: monitor.spectral_radius(),
        difference_norms: monitor.difference_norms,
    })
}

/// Homogeneous slab for the diffusion reference problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionProblem {
    pub slab_length: f64,
    pub cells: usize,
    pub sigma_t: f64,
    pub c: f64,
    pub source: f64,
}

impl DiffusionProblem {
    fn check(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.c) {
            return Err(Error::config("c", "c must lie in [0,1)"));
        }
        if !(self.sigma_t > 0.0) {
            return Err(Error::config("sigma_t", "sigma_t must be positive"));
        }
        Ok(())
    }
}

/// Solves `-(1/3σ_t) φ'' + (1-c)σ_t φ = Q` with
/// `φ(0) - (2/3σ_t) φ'(0) = 0` and `φ(X) + (2/3σ_t) φ'(X) = 0`.
///
/// Vertex-centred second-order differences. At each boundary the derivative
/// is the one-sided difference corrected by `(h/2) φ''`, with φ'' taken from
/// the equation itself, so the scheme stays tridiagonal and second order.
/// The result is returned on the DG node layout of `cells` uniform cells.
pub fn diffusion_solve(problem: &DiffusionProblem) -> Result<ScalarField> {
    problem.check()?;
    let mesh = SpatialMesh::uniform(problem.slab_length, problem.cells)?;
    let n = problem.cells;
    let h = mesh.width();
    let d = 1.0 / (3.0 * problem.sigma_t);
    let sigma_a = (1.0 - problem.c) * problem.sigma_t;
    let q = problem.source;
    let extrapolation = 2.0 / (3.0 * problem.sigma_t);

    let mut lower = vec![0.0; n + 1];
    let mut diag = vec![0.0; n + 1];
    let mut upper = vec![0.0; n + 1];
    let mut rhs = vec![0.0; n + 1];

    let edge_diag = 1.0 + extrapolation / h + extrapolation * h * sigma_a / (2.0 * d);
    let edge_rhs = extrapolation * h * q / (2.0 * d);
    diag[0] = edge_diag;
    upper[0] = -extrapolation / h;
    rhs[0] = edge_rhs;
    for i in 1..n {
        lower[i] = -d / (h * h);
        diag[i] = 2.0 * d / (h * h) + sigma_a;
        upper[i] = -d / (h * h);
        rhs[i] = q;
    }
    lower[n] = -extrapolation / h;
    diag[n] = edge_diag;
    rhs[n] = edge_rhs;

    let phi = solve_tridiagonal(&lower, &diag, &upper, &rhs)?;
    let nodal = (0..n).flat_map(|k| [phi[k], phi[k + 1]]).collect();
    ScalarField::from_nodal(nodal)
}

/// Thomas algorithm; `lower[0]` and `upper[n-1]` are ignored.
fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut denom = diag[0];
    if denom.abs() < f64::MIN_POSITIVE {
        return Err(Error::Singular("diffusion system"));
    }
    c[0] = upper[0] / denom;
    d[0] = rhs[0] / denom;
    for i in 1..n {
        denom = diag[i] - lower[i] * c[i - 1];
        if denom.abs() < f64::MIN_POSITIVE {
            return Err(Error::Singular("diffusion system"));
        }
        c[i] = if i + 1 < n { upper[i] / denom } else { 0.0 };
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / denom;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

/// Closed-form solution of the Marshak diffusion problem, symmetric about X/2.
pub fn diffusion_analytic(x: f64, problem: &DiffusionProblem) -> f64 {
    let DiffusionProblem {
        slab_length,
        sigma_t,
        c,
        source,
        ..
    } = *problem;
    let length = 1.0 / (sigma_t * (3.0 * (1.0 - c)).sqrt());
    let half = 0.5 * slab_length / length;
    // ratio cosh(u)/D₀ evaluated without overflow for thick slabs
    let u = (x - 0.5 * slab_length) / length;
    let k = 2.0 / (3.0 * sigma_t * length);
    let ratio = ((u.abs() - half).exp() + (-u.abs() - half).exp())
        / ((1.0 + k) + (1.0 - k) * (-2.0 * half).exp());
    source / ((1.0 - c) * sigma_t) * (1.0 - ratio)
}
