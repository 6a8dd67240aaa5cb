//! Command-line front end: config files, single solves, c-scans and the
//! reference comparisons.

pub mod config;
pub mod experiments;
pub mod output;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use ncsn_core::{solve, SolverKind, SpatialMesh};

pub use config::{emit_config, load_config, PartialConfig};
pub use experiments::{run_scan, run_table, run_verify, Check, ScanRow};
pub use output::PsiRequest;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("solver error: {0}")]
    Solver(ncsn_core::Error),
}

impl From<ncsn_core::Error> for CliError {
    fn from(e: ncsn_core::Error) -> Self {
        match e {
            ncsn_core::Error::InvalidConfig { .. } => CliError::Config(e.to_string()),
            other => CliError::Solver(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Solver(_) => EXIT_CONFIG,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ncsn",
    version,
    about = "Nonclassical spectral S_N slab transport solver"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem; writes solution.csv and report.csv.
    Solve {
        /// Problem file (TOML key = value).
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: PartialConfig,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Extra ψ columns as MOMENT:ANGLE, repeatable.
        #[arg(long = "psi")]
        psi: Vec<PsiRequest>,
    },
    /// Iterate over scattering ratios and solvers; writes one CSV row each.
    Scan {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        flags: PartialConfig,
        /// Comma-separated scattering ratios; may be empty.
        #[arg(long = "c-list", default_value = "")]
        c_list: String,
        /// Comma-separated solvers.
        #[arg(long, value_delimiter = ',', default_value = "si,s2sa")]
        solvers: Vec<SolverKind>,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare against the classical S_N and diffusion reference solvers.
    Verify,
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Solve {
            config,
            flags,
            out,
            psi,
        } => solve_command(config, &flags, &out, &psi),
        Command::Scan {
            config,
            flags,
            c_list,
            solvers,
            out,
        } => scan_command(config, &flags, &c_list, &solvers, out),
        Command::Verify => verify_command(),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ncsn: {e}");
            e.exit_code()
        }
    }
}

fn solve_command(
    file: Option<PathBuf>,
    flags: &PartialConfig,
    out: &std::path::Path,
    psi: &[PsiRequest],
) -> Result<i32, CliError> {
    let cfg = load_config(file.as_deref(), flags)?;
    let start = Instant::now();
    let report = solve(&cfg)?;
    let wall = start.elapsed().as_secs_f64();

    std::fs::create_dir_all(out).map_err(|e| CliError::Io(format!("{}: {e}", out.display())))?;
    let mesh = SpatialMesh::uniform(cfg.slab_length, cfg.cells)?;
    output::write_solution(&out.join("solution.csv"), &mesh, &report, psi)?;
    output::write_report(&out.join("report.csv"), &report, wall)?;

    println!(
        "{} {} iterations, converged={}, rho={}, {:.3}s",
        cfg.solver.name(),
        report.iterations,
        report.converged,
        report
            .spectral_radius
            .map_or("n/a".into(), |r| format!("{r:.4}")),
        wall
    );
    Ok(if report.converged {
        EXIT_OK
    } else {
        EXIT_NOT_CONVERGED
    })
}

pub fn parse_c_list(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| CliError::Config(format!("c-list entry '{t}': {e}")))
        })
        .collect()
}

fn scan_command(
    file: Option<PathBuf>,
    flags: &PartialConfig,
    c_list: &str,
    solvers: &[SolverKind],
    out: Option<PathBuf>,
) -> Result<i32, CliError> {
    let c_list = parse_c_list(c_list)?;
    // c is supplied per row; the base only has to be valid otherwise
    let mut flags = flags.clone();
    flags.c = Some(0.0);
    if flags.solver.is_none() {
        flags.solver = Some(SolverKind::Si);
    }
    let base = load_config(file.as_deref(), &flags)?;
    let rows = run_scan(&base, &c_list, solvers);
    let written = match &out {
        Some(path) => {
            let f = std::fs::File::create(path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            output::write_scan(std::io::BufWriter::new(f), &rows)
        }
        None => output::write_scan(std::io::stdout().lock(), &rows),
    };
    written.map_err(|e| CliError::Io(e.to_string()))?;
    Ok(EXIT_OK)
}

fn verify_command() -> Result<i32, CliError> {
    let checks = run_verify()?;
    for c in &checks {
        println!("{c}");
    }
    Ok(if checks.iter().all(|c| c.passed) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
