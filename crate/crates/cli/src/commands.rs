//! The four subcommands. Each renders its outputs in memory and commits them
//! in one step, so a failed run leaves no files behind.

use std::path::PathBuf;

use bishop_ruled::geometry::{analyze_grid, SurfaceReport};
use bishop_ruled::smarandache::JetMode;
use bishop_ruled::verify::{self, VerificationReport};
use bishop_ruled::SurfaceKind;

use crate::build::Session;
use crate::config::Format;
use crate::output::{frames_csv, grid_csv, report_json, verify_json, MeshGrid, OutputSet};
use crate::CliError;

/// What a command wrote, plus a line per item for the terminal.
#[derive(Debug, Default)]
pub struct Outcome {
    pub written: Vec<PathBuf>,
    pub summary: Vec<String>,
}

pub fn analyze(session: &Session) -> Result<(Outcome, Vec<SurfaceReport>), CliError> {
    let cfg = &session.config;
    let mut files = OutputSet::default();
    let mut summary = Vec::new();
    let mut reports = Vec::new();
    for surface in &session.surfaces {
        let kind = surface.kind();
        let grid = session.analysis_grid(kind)?;
        let samples = analyze_grid(surface, &grid, JetMode::Numeric, cfg.tolerances.kappa_eps).map_err(CliError::Numeric)?;
        let report = SurfaceReport::from_samples(kind, &samples, cfg.tolerances.kappa_eps);
        summary.push(format!(
            "{kind}: developable {} minimal {} cmc {} max|K| {:.3e} max|H| {:.3e} singular {}",
            report.developable,
            report.minimal,
            report.cmc.map_or("none".into(), |h| format!("{h:.10}")),
            report.max_abs_k,
            report.max_abs_h,
            report.singular_points.len()
        ));
        if cfg.wants(Format::Json) {
            files.add(format!("{kind}_report.json"), report_json(&session.label, &report, &grid));
        }
        reports.push(report);
    }
    if cfg.wants(Format::Csv) {
        files.add("frames.csv", frames_csv(&session.bishop));
    }
    let written = files.commit(&cfg.out_dir)?;
    Ok((Outcome { written, summary }, reports))
}

pub fn mesh(session: &Session) -> Result<Outcome, CliError> {
    let cfg = &session.config;
    let grid = session.mesh_grid()?;
    let mut files = OutputSet::default();
    let mut summary = Vec::new();
    for surface in &session.surfaces {
        let kind = surface.kind();
        let samples = analyze_grid(surface, &grid, JetMode::Numeric, cfg.tolerances.kappa_eps).map_err(CliError::Numeric)?;
        let mesh = MeshGrid::build(surface, &grid, &samples)?;
        summary.push(format!("{kind}: {} vertices, {} triangles", mesh.vertices.len(), mesh.triangle_count()));
        if cfg.wants(Format::Obj) {
            files.add(format!("{kind}.obj"), mesh.to_obj(&format!("{kind} ruled surface on {}", session.label)));
        }
        if cfg.wants(Format::Csv) {
            files.add(format!("{kind}_vertices.csv"), mesh.scalars_csv());
        }
    }
    let written = files.commit(&cfg.out_dir)?;
    Ok(Outcome { written, summary })
}

pub fn grid(session: &Session) -> Result<Outcome, CliError> {
    let cfg = &session.config;
    let mut files = OutputSet::default();
    let mut summary = Vec::new();
    for surface in &session.surfaces {
        let kind = surface.kind();
        let grid = session.analysis_grid(kind)?;
        let samples = analyze_grid(surface, &grid, JetMode::Numeric, cfg.tolerances.kappa_eps).map_err(CliError::Numeric)?;
        let singular = samples.iter().filter(|p| p.analysis.is_none()).count();
        summary.push(format!("{kind}: {} rows, {singular} singular", samples.len()));
        files.add(format!("{kind}_grid.csv"), grid_csv(&samples));
    }
    let written = files.commit(&cfg.out_dir)?;
    Ok(Outcome { written, summary })
}

/// Runs every check and writes `verify.json`; the report says whether the
/// asserted checks passed.
pub fn verify(session: &Session) -> Result<(Outcome, VerificationReport), CliError> {
    let cfg = &session.config;
    let mut report = VerificationReport::default();
    let helix = cfg.curve.is_standard_helix() && cfg.theta0 == 0.0;
    if helix {
        report.extend(verify::verify_helix_frames(&session.bishop));
    }
    for surface in &session.surfaces {
        let kind = surface.kind();
        let grid = session.analysis_grid(kind)?;
        report.extend(verify::verify_surface(surface, &grid).map_err(CliError::Numeric)?);
        report.extend(verify::verify_striction(surface).map_err(CliError::Numeric)?);
        report.extend(
            verify::verify_curve_invariants(surface, verify::default_v_eval(surface)).map_err(CliError::Numeric)?,
        );
        if kind == SurfaceKind::N1n2 {
            let eps = cfg.tolerances.kappa_eps;
            let samples = analyze_grid(surface, &grid, JetMode::Numeric, eps).map_err(CliError::Numeric)?;
            let r = SurfaceReport::from_samples(kind, &samples, eps);
            report.checks.push(verify::verify_slant_helix_minimal(&session.bishop, &r, cfg.tolerances.rel_tol, eps));
        }
        if helix {
            report.checks.push(verify::verify_helix_surface(surface, &grid).map_err(CliError::Numeric)?);
        }
    }
    let summary = report
        .checks
        .iter()
        .map(|c| {
            let tag = match (c.asserted, c.passed) {
                (false, _) => "INFO",
                (true, true) => "PASS",
                (true, false) => "FAIL",
            };
            if c.asserted {
                format!("[{tag}] {}: {:.3e} (tol {:.0e})", c.name, c.max_deviation, c.tolerance)
            } else {
                format!("[{tag}] {}: {:.3e}", c.name, c.max_deviation)
            }
        })
        .collect();
    let mut files = OutputSet::default();
    files.add("verify.json", verify_json(&session.label, &report));
    let written = files.commit(&cfg.out_dir)?;
    Ok((Outcome { written, summary }, report))
}
