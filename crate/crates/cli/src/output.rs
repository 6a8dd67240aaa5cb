//! CSV artifacts. Floats use 17 significant digits and `\n` terminators.

use std::io::Write;
use std::path::Path;

use ncsn_core::{SolveReport, SpatialMesh};

use crate::experiments::ScanRow;
use crate::CliError;

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

/// One `(moment, angle)` pair of ψ to append to `solution.csv`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsiRequest {
    pub moment: usize,
    pub angle: usize,
}

impl std::str::FromStr for PsiRequest {
    type Err = String;

    /// `m:n`, e.g. `0:3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (m, n) = s
            .split_once(':')
            .ok_or_else(|| format!("expected MOMENT:ANGLE, got '{s}'"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}"));
        Ok(Self {
            moment: parse(m)?,
            angle: parse(n)?,
        })
    }
}

fn csv_writer<W: Write>(sink: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink)
}

fn io_err(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

pub fn write_solution(
    path: &Path,
    mesh: &SpatialMesh,
    report: &SolveReport,
    psi: &[PsiRequest],
) -> Result<(), CliError> {
    let moments = &report.moments;
    for req in psi {
        if req.moment >= moments.moments() || req.angle >= moments.angles() {
            return Err(CliError::Config(format!(
                "psi column m{}:n{} out of range (M+1 = {}, N = {})",
                req.moment,
                req.angle,
                moments.moments(),
                moments.angles()
            )));
        }
    }
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut w = csv_writer(std::io::BufWriter::new(file));
    let mut header = vec!["x".to_string(), "phi".into(), "f".into()];
    header.extend(
        psi.iter()
            .map(|r| format!("psi_m{}_n{}", r.moment, r.angle)),
    );
    w.write_record(&header).map_err(io_err(path))?;
    let xs = mesh.node_coordinates();
    for (i, &x) in xs.iter().enumerate() {
        let (cell, node) = (i / 2, i % 2);
        let mut row = vec![
            fmt_f64(x),
            fmt_f64(report.scalar_flux.values()[i]),
            fmt_f64(report.collision_rate.values()[i]),
        ];
        row.extend(
            psi.iter()
                .map(|r| fmt_f64(moments.get(r.moment, r.angle, cell, node))),
        );
        w.write_record(&row).map_err(io_err(path))?;
    }
    w.flush()
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write_report(path: &Path, report: &SolveReport, wall_time_s: f64) -> Result<(), CliError> {
    let file = std::fs::File::create(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let mut w = csv_writer(file);
    w.write_record(["iterations", "converged", "rho_estimate", "wall_time_s"])
        .map_err(io_err(path))?;
    w.write_record([
        report.iterations.to_string(),
        report.converged.to_string(),
        fmt_opt(report.spectral_radius),
        fmt_f64(wall_time_s),
    ])
    .map_err(io_err(path))?;
    w.flush()
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

pub fn write_scan<W: Write>(sink: W, rows: &[ScanRow]) -> Result<(), csv::Error> {
    let mut w = csv_writer(sink);
    w.write_record(["c", "solver", "iterations", "rho_estimate", "status"])?;
    for row in rows {
        w.write_record([
            fmt_f64(row.c),
            row.solver.name().to_string(),
            row.iterations.map(|i| i.to_string()).unwrap_or_default(),
            fmt_opt(row.spectral_radius),
            row.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
