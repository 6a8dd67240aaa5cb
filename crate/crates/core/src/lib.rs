//! Deterministic solver for the one-speed nonclassical spectral S_N
//! equations in slab geometry.
//!
//! The nonclassical angular flux is expanded in Laguerre polynomials of the
//! free-path variable, which turns the problem into a cascade of classical
//! looking transport equations per moment. These are swept with linear
//! discontinuous Galerkin in space and Gauss-Legendre ordinates in angle and
//! iterated either by plain source iteration or with S2 synthetic
//! acceleration. Reference solvers for the classical S_N problem and for
//! slab diffusion with Marshak boundaries are included for verification.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod discretization;
pub mod error;
pub mod freepath;
pub mod postprocess;
pub mod reference;
pub mod solver;

pub use discretization::{
    cascade_sweep, gauss_legendre, scattering_source, AngularQuadrature, MomentField, ScalarField,
    SpatialMesh, Sweeper,
};
pub use error::{Error, Result};
pub use freepath::{
    compute_moments, laguerre_eval, FreePathKind, FreePathModel, FreePathQuadrature, LaguerreBasis,
    MomentCoefficients,
};
pub use solver::{
    s2sa_solve, si_solve, solve, ProblemConfig, SolveReport, SolverKind, StoppingNorm,
};
