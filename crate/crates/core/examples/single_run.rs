//! One inverse-dynamics run with CSV, plot files and a field dump.
//!
//!     cargo run --example single_run -- [joint] [surface-profile|stationary] [out-dir]

use std::path::PathBuf;

use flexsim::config::{Config, SurfaceMode};
use flexsim::harness::{emit_plot_data, run_single, RunSpec};
use flexsim::profile::ProfileShape;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let joint: ProfileShape = args.next().as_deref().unwrap_or("sine").parse()?;
    let surface = args.next().unwrap_or_else(|| "sine".into());
    let out = PathBuf::from(args.next().unwrap_or_else(|| "out/single".into()));

    let cfg = Config::default();
    let spec = if surface == "stationary" {
        RunSpec::new(&cfg, joint, SurfaceMode::Stationary, cfg.surface.profile)
    } else {
        RunSpec::new(&cfg, joint, SurfaceMode::Rotating, surface.parse()?)
    };
    let result = run_single(&spec, &out, true)?;
    let plots = emit_plot_data(&result, &out)?;

    let s = result.summary;
    println!("{}: {} rows", result.label, result.rows.len());
    println!(
        "  max |F| = {:.4} N, final |F| = {:.4} N",
        s.max_fmag, s.terminal_fmag
    );
    println!(
        "  max |tau1| = {:.4} N m, max |tau2| = {:.4} N m",
        s.max_tau1, s.max_tau2
    );
    for (row, rigid) in result.rows.iter().zip(&result.run.rigid).step_by(250) {
        println!(
            "  t = {:4.2}  tau = ({:9.4}, {:9.4})  rigid = ({:9.4}, {:9.4})  w_mid = {:+.5}",
            row.t, row.tau1, row.tau2, rigid.tau1, rigid.tau2, row.w_mid
        );
    }
    println!(
        "wrote {} and {} plot files",
        out.join(format!("{}.csv", result.label)).display(),
        plots.len()
    );
    Ok(())
}
