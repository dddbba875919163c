//! Response of an undamped modal oscillator `z'' + w^2 z = N(t)` from rest,
//! i.e. the Duhamel integral `z(t) = (1/w) int_0^t N(tau) sin(w (t - tau)) dtau`.

/// Modal coordinate and its first two time derivatives on the time grid.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ModalResponse {
    pub zeta: Vec<f64>,
    pub zeta_dot: Vec<f64>,
    pub zeta_ddot: Vec<f64>,
}

/// Duhamel integral with the forcing interpolated linearly between samples
/// and the kernel integrated exactly over each step.
///
/// Evaluated as the equivalent one-step recurrence, so the cost is linear in
/// the number of samples and the result carries no kernel-quadrature error
/// however coarse `dt` is relative to `1 / omega`.
pub fn duhamel(forcing: &[f64], omega: f64, dt: f64) -> ModalResponse {
    let n = forcing.len();
    let mut out = ModalResponse {
        zeta: vec![0.0; n],
        zeta_dot: vec![0.0; n],
        zeta_ddot: vec![0.0; n],
    };
    if n == 0 {
        return out;
    }
    let w2 = omega * omega;
    let (sin_h, cos_h) = (omega * dt).sin_cos();
    let (mut z, mut zd) = (0.0, 0.0);
    out.zeta_ddot[0] = forcing[0];
    for k in 0..n - 1 {
        let (f0, f1) = (forcing[k], forcing[k + 1]);
        let slope = (f1 - f0) / dt;
        let a = z - f0 / w2;
        let b = (zd - slope / w2) / omega;
        z = a * cos_h + b * sin_h + f1 / w2;
        zd = omega * (b * cos_h - a * sin_h) + slope / w2;
        out.zeta[k + 1] = z;
        out.zeta_dot[k + 1] = zd;
        out.zeta_ddot[k + 1] = f1 - w2 * z;
    }
    out
}

/// Direct trapezoidal evaluation of the convolution at every grid time.
///
/// Quadratic in the number of samples and only second-order accurate in
/// `omega * dt`; kept as a literal cross-check of [`duhamel`].
pub fn duhamel_trapezoid(forcing: &[f64], omega: f64, dt: f64) -> ModalResponse {
    let n = forcing.len();
    let mut out = ModalResponse {
        zeta: vec![0.0; n],
        zeta_dot: vec![0.0; n],
        zeta_ddot: vec![0.0; n],
    };
    for k in 0..n {
        let t = k as f64 * dt;
        let (mut zs, mut zc) = (0.0, 0.0);
        for (j, &f) in forcing.iter().enumerate().take(k + 1) {
            let weight = if j == 0 || j == k { 0.5 } else { 1.0 };
            let (s, c) = (omega * (t - j as f64 * dt)).sin_cos();
            zs += weight * f * s;
            zc += weight * f * c;
        }
        out.zeta[k] = zs * dt / omega;
        out.zeta_dot[k] = zc * dt;
        out.zeta_ddot[k] = forcing[k] - omega * omega * out.zeta[k];
    }
    out
}
