//! Scattering-ratio scans and the reference-solver comparisons.

use rayon::prelude::*;

use ncsn_core::reference::{
    classical_sn_solve, diffusion_analytic, diffusion_solve, ClassicalProblem, DiffusionProblem,
};
use ncsn_core::{
    solve, FreePathKind, ProblemConfig, ScalarField, SolveReport, SolverKind, SpatialMesh,
};

/// Free-path nodes for the X = 20 figure problems; M = 10 nodes leaves c₀
/// about 1.6% above one for the diffusion-mimic model.
pub const FIGURE_FREEPATH_NODES: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub c: f64,
    pub solver: SolverKind,
    pub iterations: Option<usize>,
    pub spectral_radius: Option<f64>,
    pub status: String,
}

/// Solves every (c, solver) pair concurrently; results keep input order.
pub fn run_table(
    base: &ProblemConfig,
    cs: &[f64],
    solvers: &[SolverKind],
) -> Vec<(ProblemConfig, ncsn_core::Result<SolveReport>)> {
    let configs: Vec<ProblemConfig> = cs
        .iter()
        .flat_map(|&c| {
            solvers.iter().map(move |&solver| ProblemConfig {
                c,
                solver,
                ..base.clone()
            })
        })
        .collect();
    configs
        .into_par_iter()
        .map(|cfg| {
            let result = solve(&cfg);
            (cfg, result)
        })
        .collect()
}

pub fn run_scan(base: &ProblemConfig, cs: &[f64], solvers: &[SolverKind]) -> Vec<ScanRow> {
    run_table(base, cs, solvers)
        .into_iter()
        .map(|(cfg, result)| match result {
            Ok(report) => ScanRow {
                c: cfg.c,
                solver: cfg.solver,
                iterations: Some(report.iterations),
                spectral_radius: report.spectral_radius,
                status: if report.converged {
                    "converged"
                } else {
                    "max_iterations"
                }
                .into(),
            },
            Err(e) => ScanRow {
                c: cfg.c,
                solver: cfg.solver,
                iterations: None,
                spectral_radius: None,
                status: format!("error: {e}"),
            },
        })
        .collect()
}

pub fn figure_config(model: FreePathKind, solver: SolverKind) -> ProblemConfig {
    ProblemConfig {
        freepath_nodes: Some(FIGURE_FREEPATH_NODES),
        ..ProblemConfig::thin_slab(model, solver)
    }
}

/// Largest pointwise |a - b| / |b| and the node where it occurs.
pub fn max_relative_gap(a: &ScalarField, b: &ScalarField) -> (f64, usize) {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| ((x - y) / y).abs())
        .enumerate()
        .fold(
            (0.0, 0),
            |best, (i, g)| if g > best.0 { (g, i) } else { best },
        )
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {}: max rel. deviation {:.3e} (tol {:.0e}); {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.measured,
            self.tolerance,
            self.detail
        )
    }
}

fn check(name: &'static str, measured: f64, tolerance: f64, detail: String) -> Check {
    Check {
        name,
        passed: measured <= tolerance,
        measured,
        tolerance,
        detail,
    }
}

/// Exponential-model Φ against the classical S_N solver on the same mesh.
pub fn exponential_equivalence(solver: SolverKind) -> ncsn_core::Result<Check> {
    let cfg = figure_config(FreePathKind::Exponential, solver);
    let report = solve(&cfg)?;
    let classical = classical_sn_solve(&ClassicalProblem {
        slab_length: cfg.slab_length,
        cells: cfg.cells,
        angles: cfg.angles,
        sigma_t: cfg.sigma_t,
        c: cfg.c,
        source: cfg.source,
        xi: 1e-10,
        max_iterations: 1_000_000,
    })?;
    let (gap, at) = max_relative_gap(&report.scalar_flux, &classical.scalar_flux);
    let x = SpatialMesh::uniform(cfg.slab_length, cfg.cells)?.node_coordinates()[at];
    Ok(check(
        "exponential model vs classical S16 (X=20, c=0.999)",
        gap,
        1e-2,
        format!(
            "worst at x={x:.2}, {} {} iterations",
            report.iterations,
            solver.name()
        ),
    ))
}

/// Diffusion-mimic collision rate against σ_t φ from the diffusion solver.
pub fn diffusion_equivalence(solver: SolverKind) -> ncsn_core::Result<Check> {
    let cfg = figure_config(FreePathKind::DiffusionMimic, solver);
    let report = solve(&cfg)?;
    let phi = diffusion_solve(&DiffusionProblem {
        slab_length: cfg.slab_length,
        cells: cfg.cells,
        sigma_t: cfg.sigma_t,
        c: cfg.c,
        source: cfg.source,
    })?;
    let rate = &phi * cfg.sigma_t;
    let (gap, at) = max_relative_gap(&report.collision_rate, &rate);
    let xs = SpatialMesh::uniform(cfg.slab_length, cfg.cells)?.node_coordinates();
    let mid = cfg.cells;
    let mid_gap = (report.collision_rate.values()[mid] - rate.values()[mid]) / rate.values()[mid];
    Ok(check(
        "diffusion-mimic f vs diffusion (X=20, c=0.999)",
        gap,
        2e-2,
        format!("worst at x={:.2}; midplane {:+.3e}", xs[at], mid_gap),
    ))
}

/// Finite-difference diffusion against its closed form at 2000 cells.
pub fn diffusion_closed_form() -> ncsn_core::Result<Check> {
    let problem = DiffusionProblem {
        slab_length: 20.0,
        cells: 2000,
        sigma_t: 1.0,
        c: 0.999,
        source: 1.0,
    };
    let phi = diffusion_solve(&problem)?;
    let xs = SpatialMesh::uniform(problem.slab_length, problem.cells)?.node_coordinates();
    let exact = ScalarField::from_nodal(
        xs.iter()
            .map(|&x| diffusion_analytic(x, &problem))
            .collect(),
    )?;
    let (gap, _) = max_relative_gap(&phi, &exact);
    Ok(check(
        "diffusion FD vs closed form (X=20, c=0.999, 2000 cells)",
        gap,
        1e-6,
        format!("midplane phi={:.6}", exact.values()[problem.cells]),
    ))
}

pub fn run_verify() -> ncsn_core::Result<Vec<Check>> {
    let (fig1, (fig2, closed)) = rayon::join(
        || exponential_equivalence(SolverKind::S2sa),
        || {
            rayon::join(
                || diffusion_equivalence(SolverKind::S2sa),
                diffusion_closed_form,
            )
        },
    );
    Ok(vec![fig1?, fig2?, closed?])
}
