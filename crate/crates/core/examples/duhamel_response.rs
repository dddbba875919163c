//! Undamped modal response to a step and to resonant forcing, comparing the
//! exact piecewise-linear recurrence with direct trapezoidal convolution.
//!
//!     cargo run --example duhamel_response

use flexsim::flexbeam::{duhamel, duhamel_trapezoid};

fn main() {
    let dt = 0.005;
    let n = 1001;
    let omega = 2.0;

    let step = vec![1.0; n];
    let k = (std::f64::consts::FRAC_PI_2 / dt).round() as usize;
    let r = duhamel(&step, omega, dt);
    println!(
        "step, t = {:.3}: zeta = {:.6} (analytic {:.6})",
        k as f64 * dt,
        r.zeta[k],
        (1.0 - (omega * k as f64 * dt).cos()) / (omega * omega)
    );

    let resonant: Vec<f64> = (0..n).map(|i| (omega * i as f64 * dt).sin()).collect();
    let exact = duhamel(&resonant, omega, dt);
    let trap = duhamel_trapezoid(&resonant, omega, dt);
    for i in (0..n).step_by(200) {
        let t = i as f64 * dt;
        let analytic =
            (omega * t).sin() / (2.0 * omega * omega) - t * (omega * t).cos() / (2.0 * omega);
        println!(
            "resonant t = {t:.2}: recurrence {:+.6}  trapezoid {:+.6}  analytic {:+.6}",
            exact.zeta[i], trap.zeta[i], analytic
        );
    }

    // third mode of the default link at the default step
    let omega3 = 247.2;
    let fast: Vec<f64> = (0..n).map(|i| (3.0 * i as f64 * dt).sin()).collect();
    let a = duhamel(&fast, omega3, dt);
    let b = duhamel_trapezoid(&fast, omega3, dt);
    let worst = a
        .zeta
        .iter()
        .zip(&b.zeta)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let peak = a.zeta.iter().map(|x| x.abs()).fold(0.0, f64::max);
    println!(
        "omega dt = {:.2}: trapezoid deviates by {:.1}% of peak",
        omega3 * dt,
        100.0 * worst / peak
    );
}
