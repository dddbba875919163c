//! Experiment orchestration: single runs, the full joint-profile by
//! surface-profile matrix, CSV output and a Markdown comparison report.

use std::fmt::Write as _;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::config::{Config, SurfaceMode};
use crate::dynamics::{inverse_dynamics_with, Run};
use crate::error::{Error, Result};
use crate::flexbeam::TipBoundary;
use crate::profile::ProfileShape;

pub const CSV_HEADER: &str = "t,theta1,theta2,alpha,r_x,r_y,Fx,Fy,Fmag,tau1,tau2,w_mid";
pub const SUMMARY_HEADER: &str = "label,max_Fmag,max_tau1,max_tau2,terminal_Fmag";

/// Stations written by `--dump-field`.
const FIELD_DUMP_STATIONS: usize = 21;

/// Surface-rotation profiles of the matrix, in report order.
pub const SURFACE_PROFILES: [ProfileShape; 4] = [
    ProfileShape::Sine,
    ProfileShape::GaussianVelocity,
    ProfileShape::Polynomial,
    ProfileShape::Parabolic,
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub joint_profile: ProfileShape,
    pub surface_mode: SurfaceMode,
    /// Ignored for stationary surfaces.
    pub surface_profile: ProfileShape,
    pub config: Config,
    pub tip: TipBoundary,
    pub label: String,
}

impl RunSpec {
    pub fn new(
        config: &Config,
        joint_profile: ProfileShape,
        surface_mode: SurfaceMode,
        surface_profile: ProfileShape,
    ) -> Self {
        let label = match surface_mode {
            SurfaceMode::Stationary => format!("stationary-{joint_profile}"),
            SurfaceMode::Rotating => format!("{surface_profile}-{joint_profile}"),
        };
        Self {
            joint_profile,
            surface_mode,
            surface_profile,
            config: config.clone(),
            tip: TipBoundary::default(),
            label,
        }
    }

    /// The fifteen runs: every joint profile on the stationary surface and
    /// under each of the four rotation profiles.
    pub fn matrix(config: &Config) -> Vec<RunSpec> {
        let mut specs = Vec::with_capacity(15);
        for joint in ProfileShape::JOINT {
            specs.push(RunSpec::new(
                config,
                joint,
                SurfaceMode::Stationary,
                config.surface.profile,
            ));
            for surface in SURFACE_PROFILES {
                specs.push(RunSpec::new(config, joint, SurfaceMode::Rotating, surface));
            }
        }
        specs
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub t: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub alpha: f64,
    pub r_x: f64,
    pub r_y: f64,
    pub fx: f64,
    pub fy: f64,
    pub fmag: f64,
    pub tau1: f64,
    pub tau2: f64,
    pub w_mid: f64,
}

impl Row {
    fn to_csv(self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.t,
            self.theta1,
            self.theta2,
            self.alpha,
            self.r_x,
            self.r_y,
            self.fx,
            self.fy,
            self.fmag,
            self.tau1,
            self.tau2,
            self.w_mid
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub max_fmag: f64,
    pub max_tau1: f64,
    pub max_tau2: f64,
    pub terminal_fmag: f64,
}

impl Summary {
    pub fn from_rows(rows: &[Row]) -> Self {
        let max_abs = |f: fn(&Row) -> f64| rows.iter().map(|r| f(r).abs()).fold(0.0, f64::max);
        Self {
            max_fmag: max_abs(|r| r.fmag),
            max_tau1: max_abs(|r| r.tau1),
            max_tau2: max_abs(|r| r.tau2),
            terminal_fmag: rows.last().map_or(0.0, |r| r.fmag),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub label: String,
    pub spec: RunSpec,
    pub rows: Vec<Row>,
    pub summary: Summary,
    pub run: Run,
}

impl RunResult {
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{CSV_HEADER}")?;
        for row in &self.rows {
            writeln!(out, "{}", row.to_csv())?;
        }
        Ok(())
    }

    pub fn csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("CSV is ASCII")
    }

    /// Column of the table by header name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let pick: fn(&Row) -> f64 = match name {
            "t" => |r| r.t,
            "theta1" => |r| r.theta1,
            "theta2" => |r| r.theta2,
            "alpha" => |r| r.alpha,
            "r_x" => |r| r.r_x,
            "r_y" => |r| r.r_y,
            "Fx" => |r| r.fx,
            "Fy" => |r| r.fy,
            "Fmag" => |r| r.fmag,
            "tau1" => |r| r.tau1,
            "tau2" => |r| r.tau2,
            "w_mid" => |r| r.w_mid,
            _ => return None,
        };
        Some(self.rows.iter().map(pick).collect())
    }
}

/// Run the inverse dynamics for one spec without touching the filesystem.
pub fn simulate(spec: &RunSpec) -> Result<RunResult> {
    let wrap = |e: Error| Error::Run {
        label: spec.label.clone(),
        t: e.failing_time().unwrap_or(f64::NAN),
        source: Box::new(e),
    };
    let cfg = &spec.config;
    let joints = cfg.joint_profiles(spec.joint_profile).map_err(wrap)?;
    let surface = cfg
        .surface(spec.surface_mode, spec.surface_profile)
        .map_err(wrap)?;
    let run = inverse_dynamics_with(&cfg.params, &joints, &surface, spec.tip).map_err(wrap)?;

    let mid = 0.5 * cfg.params.l2;
    let rows: Vec<Row> = (0..run.times.len())
        .map(|k| {
            let s = &run.states[k];
            let f = &run.forces[k];
            let tq = &run.torques[k];
            Row {
                t: run.times[k],
                theta1: s.theta1,
                theta2: s.theta2,
                alpha: run.alpha[k],
                r_x: run.contacts[k].r.x,
                r_y: run.contacts[k].r.y,
                fx: f.fx,
                fy: f.fy,
                fmag: f.fmag,
                tau1: tq.tau1,
                tau2: tq.tau2,
                w_mid: run.field.w(mid, k),
            }
        })
        .collect();
    if let Some((k, _)) = rows.iter().enumerate().find(|(_, r)| !row_is_finite(r)) {
        return Err(Error::Run {
            label: spec.label.clone(),
            t: rows[k].t,
            source: Box::new(Error::NonFinite {
                what: "value in run output",
            }),
        });
    }
    Ok(RunResult {
        label: spec.label.clone(),
        summary: Summary::from_rows(&rows),
        spec: spec.clone(),
        rows,
        run,
    })
}

fn row_is_finite(r: &Row) -> bool {
    [
        r.t, r.theta1, r.theta2, r.alpha, r.r_x, r.r_y, r.fx, r.fy, r.fmag, r.tau1, r.tau2, r.w_mid,
    ]
    .iter()
    .all(|v| v.is_finite())
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_file(
    path: &Path,
    write: impl FnOnce(&mut BufWriter<fs::File>) -> std::io::Result<()>,
) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut out = BufWriter::new(file);
    write(&mut out)
        .and_then(|_| out.flush())
        .map_err(|e| Error::io(path, e))
}

/// Simulate one spec and write `<label>.csv` (and `<label>_field.csv` when
/// `dump_field` is set) into `out_dir`.
pub fn run_single(spec: &RunSpec, out_dir: &Path, dump_field: bool) -> Result<RunResult> {
    let result = simulate(spec)?;
    create_dir(out_dir)?;
    write_file(&out_dir.join(format!("{}.csv", result.label)), |w| {
        result.write_csv(w)
    })?;
    if dump_field {
        write_file(&out_dir.join(format!("{}_field.csv", result.label)), |w| {
            result.run.field.write_csv(w, FIELD_DUMP_STATIONS)
        })?;
    }
    Ok(result)
}

/// Two-column `t,<series>` files for Fmag, tau1, tau2 and w_mid.
pub fn emit_plot_data(result: &RunResult, out_dir: &Path) -> Result<Vec<PathBuf>> {
    create_dir(out_dir)?;
    let mut paths = Vec::with_capacity(4);
    for name in ["Fmag", "tau1", "tau2", "w_mid"] {
        let values = result.column(name).expect("known column");
        let path = out_dir.join(format!("{}.{name}.csv", result.label));
        write_file(&path, |w| {
            writeln!(w, "t,{name}")?;
            for (row, v) in result.rows.iter().zip(&values) {
                writeln!(w, "{},{}", row.t, v)?;
            }
            Ok(())
        })?;
        paths.push(path);
    }
    Ok(paths)
}

#[derive(Debug, Clone)]
pub struct MatrixResult {
    pub results: Vec<RunResult>,
    pub summary_csv: String,
    pub report: String,
}

impl MatrixResult {
    pub fn get(&self, label: &str) -> Option<&RunResult> {
        self.results.iter().find(|r| r.label == label)
    }
}

pub fn summary_table(results: &[RunResult]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in results {
        let s = r.summary;
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.label, s.max_fmag, s.max_tau1, s.max_tau2, s.terminal_fmag
        );
    }
    out
}

/// Markdown report ranking runs by peak contact force within each joint
/// profile.
pub fn markdown_report(results: &[RunResult]) -> String {
    let mut out = String::from("# Joint-profile / surface-profile matrix\n");
    for joint in ProfileShape::JOINT {
        let mut group: Vec<&RunResult> = results
            .iter()
            .filter(|r| r.spec.joint_profile == joint)
            .collect();
        if group.is_empty() {
            continue;
        }
        group.sort_by(|a, b| b.summary.max_fmag.total_cmp(&a.summary.max_fmag));
        let _ = writeln!(out, "\n## {joint} joint motion\n");
        out.push_str(
            "| rank | run | max Fmag (N) | max tau1 (N m) | max tau2 (N m) | terminal Fmag (N) |\n",
        );
        out.push_str("|---:|---|---:|---:|---:|---:|\n");
        for (i, r) in group.iter().enumerate() {
            let s = r.summary;
            let _ = writeln!(
                out,
                "| {} | {} | {:.6} | {:.6} | {:.6} | {:.6} |",
                i + 1,
                r.label,
                s.max_fmag,
                s.max_tau1,
                s.max_tau2,
                s.terminal_fmag
            );
        }
    }
    let stationary: Vec<&RunResult> = results
        .iter()
        .filter(|r| r.spec.surface_mode == SurfaceMode::Stationary)
        .collect();
    if !stationary.is_empty() {
        let mut by_force = stationary.clone();
        by_force.sort_by(|a, b| b.summary.max_fmag.total_cmp(&a.summary.max_fmag));
        let order: Vec<&str> = by_force.iter().map(|r| r.label.as_str()).collect();
        let _ = writeln!(
            out,
            "\nStationary surface, by peak contact force: {}",
            order.join(" > ")
        );
    }
    out
}

/// Run every spec of the matrix (concurrently), then write one CSV per run,
/// `matrix_summary.csv` and `matrix_report.md`. If a run fails, the outputs
/// of the runs that succeeded are still written before the error is returned.
pub fn run_matrix(config: &Config, out_dir: &Path) -> Result<MatrixResult> {
    run_specs(&RunSpec::matrix(config), out_dir)
}

pub fn run_specs(specs: &[RunSpec], out_dir: &Path) -> Result<MatrixResult> {
    let outcomes: Vec<Result<RunResult>> = specs.par_iter().map(simulate).collect();
    create_dir(out_dir)?;
    let mut results = Vec::with_capacity(outcomes.len());
    let mut first_error = None;
    for outcome in outcomes {
        match outcome {
            Ok(r) => results.push(r),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    for r in &results {
        write_file(&out_dir.join(format!("{}.csv", r.label)), |w| {
            r.write_csv(w)
        })?;
    }
    let summary_csv = summary_table(&results);
    let report = markdown_report(&results);
    write_file(&out_dir.join("matrix_summary.csv"), |w| {
        w.write_all(summary_csv.as_bytes())
    })?;
    write_file(&out_dir.join("matrix_report.md"), |w| {
        w.write_all(report.as_bytes())
    })?;
    match first_error {
        Some(e) => Err(e),
        None => Ok(MatrixResult {
            results,
            summary_csv,
            report,
        }),
    }
}
