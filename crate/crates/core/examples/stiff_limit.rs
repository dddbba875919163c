//! Stiffen the flexible link and drop the contact spring; the flexible
//! pipeline should approach the rigid-arm torques.
//!
//!     cargo run --example stiff_limit

use flexsim::config::{Config, SurfaceMode};
use flexsim::harness::{simulate, RunSpec};
use flexsim::profile::ProfileShape;

fn main() -> flexsim::error::Result<()> {
    for scale in [1.0, 1e2, 1e4, 1e6] {
        let mut cfg = Config::default();
        cfg.params.ei *= scale;
        cfg.params.ks = 0.0;
        for joint in ProfileShape::JOINT {
            let r = simulate(&RunSpec::new(
                &cfg,
                joint,
                SurfaceMode::Stationary,
                ProfileShape::Sine,
            ))?;
            let mut dev: f64 = 0.0;
            let mut peak: f64 = 0.0;
            for (flex, rigid) in r.run.torques.iter().zip(&r.run.rigid) {
                dev = dev
                    .max((flex.tau1 - rigid.tau1).abs())
                    .max((flex.tau2 - rigid.tau2).abs());
                peak = peak.max(rigid.tau1.abs()).max(rigid.tau2.abs());
            }
            let w = r.rows.iter().map(|row| row.w_mid.abs()).fold(0.0, f64::max);
            println!(
                "EI x{scale:<7e} {:>10}: max|w_mid| = {w:.3e} m, torque deviation {:.3e} of peak",
                joint.name(),
                dev / peak
            );
        }
    }
    Ok(())
}
