mod common;

use flexsim::config::{Config, SurfaceMode};
use flexsim::flexbeam::{duhamel, duhamel_trapezoid, TipBoundary};
use flexsim::harness::{emit_plot_data, simulate, RunResult, RunSpec};
use flexsim::profile::ProfileShape;

fn run_with(cfg: &Config, tip: TipBoundary) -> RunResult {
    let mut spec = RunSpec::new(
        cfg,
        ProfileShape::Sine,
        SurfaceMode::Rotating,
        ProfileShape::Sine,
    );
    spec.tip = tip;
    simulate(&spec).unwrap()
}

fn max_abs_w(r: &RunResult, stations: usize) -> f64 {
    let l2 = r.spec.config.params.l2;
    let field = &r.run.field;
    let mut m: f64 = 0.0;
    for k in 0..field.len() {
        for i in 0..=stations {
            m = m.max(field.w(l2 * i as f64 / stations as f64, k).abs());
        }
    }
    m
}

#[test]
fn deflection_rate_matches_time_differences() {
    let cfg = Config::default();
    let r = run_with(&cfg, TipBoundary::default());
    let field = &r.run.field;
    let dt = cfg.params.dt;
    for x in [
        0.25 * cfg.params.l2,
        0.5 * cfg.params.l2,
        0.8 * cfg.params.l2,
    ] {
        let mut err: f64 = 0.0;
        let mut scale: f64 = 0.0;
        for k in 1..field.len() - 1 {
            let fd = (field.w(x, k + 1) - field.w(x, k - 1)) / (2.0 * dt);
            err = err.max((fd - field.w_dot(x, k)).abs());
            scale = scale.max(field.w_dot(x, k).abs());
        }
        assert!(err / scale < 1e-3, "x = {x}: {err} vs {scale}");
    }
}

#[test]
fn deflection_converges_in_time_step_and_modes() {
    let cfg = Config::default();
    let base = max_abs_w(&run_with(&cfg, TipBoundary::default()), 30);

    let mut fine = cfg.clone();
    fine.params.dt /= 2.0;
    let halved = max_abs_w(&run_with(&fine, TipBoundary::default()), 30);

    let mut more = cfg.clone();
    more.params.n_modes = 5;
    let five = max_abs_w(&run_with(&more, TipBoundary::default()), 30);
    assert!((halved - base).abs() / base < 0.01, "{base} vs {halved}");
    assert!((five - base).abs() / base < 0.05, "{base} vs {five}");
}

#[test]
fn assembled_field_reconstructs_total_displacement() {
    let cfg = Config::default();
    let r = run_with(&cfg, TipBoundary::default());
    let field = &r.run.field;
    for k in (0..field.len()).step_by(37) {
        let theta2 = r.run.states[k].theta2;
        for i in 0..=10 {
            let x = cfg.params.l2 * i as f64 / 10.0;
            let y = field.y(x, k);
            approx::assert_relative_eq!(
                field.w(x, k),
                y - x * theta2,
                epsilon = 1e-12 * y.abs().max(1.0)
            );
        }
    }
}

#[test]
fn curvature_agrees_with_spatial_differences() {
    let cfg = Config::default();
    let r = run_with(&cfg, TipBoundary::default());
    let field = &r.run.field;
    let h = 1e-3;
    for k in [0, 250, 500, 999] {
        for x in [0.1, 0.375, 0.6] {
            let fd = (field.y(x + h, k) - 2.0 * field.y(x, k) + field.y(x - h, k)) / (h * h);
            let exact = field.y_curvature(x, k);
            assert!(
                (fd - exact).abs() < 1e-4 * exact.abs().max(1.0),
                "{fd} vs {exact}"
            );
        }
    }
}

#[test]
fn literal_tip_boundary_is_available() {
    let cfg = Config::default();
    let moment = run_with(&cfg, TipBoundary::ModalMoment);
    let literal = run_with(&cfg, TipBoundary::Literal);
    let params = &cfg.params;
    let basis = literal.run.field.basis();
    let omega1 = basis.natural_frequency(1);
    let slope = basis.eigen_slope(1, params.l2).unwrap();
    for k in [0, 400, 1000] {
        let t = literal.run.times[k];
        let expected = omega1 * omega1 * slope * params.tip_inertia(t).unwrap();
        let p = literal.run.field.boundary(k).p;
        assert!(
            (p - expected).abs() < 1e-12 * expected.abs(),
            "{p} vs {expected}"
        );
    }
    assert_ne!(moment.rows, literal.rows);
}

#[test]
fn stiff_link_barely_deflects() {
    let cfg = common::stiff_config();
    let r = run_with(&cfg, TipBoundary::default());
    let dir = tempfile::tempdir().unwrap();
    let files = emit_plot_data(&r, dir.path()).unwrap();
    assert_eq!(files.len(), 4);
    let w_mid = files
        .iter()
        .find(|p| p.to_string_lossy().ends_with(".w_mid.csv"))
        .unwrap();
    let text = std::fs::read_to_string(w_mid).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,w_mid"));
    let values: Vec<f64> = lines
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values.len(), r.rows.len());
    assert!(values.iter().all(|v| v.abs() < 1e-6));
}

#[test]
fn recurrence_and_trapezoid_agree_on_a_fine_grid() {
    let dt = 1e-3;
    let forcing: Vec<f64> = (0..=3000)
        .map(|k| (1.3 * k as f64 * dt).sin() + 0.5)
        .collect();
    let omega = 12.0;
    let exact = duhamel(&forcing, omega, dt);
    let trap = duhamel_trapezoid(&forcing, omega, dt);
    let err = common::rel_l2(&trap.zeta, &exact.zeta);
    assert!(err < 1e-3, "{err}");
}
