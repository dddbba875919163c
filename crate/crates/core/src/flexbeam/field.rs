use std::io::Write;

use super::duhamel::ModalResponse;
use super::modes::ModalBasis;
use super::shape::{shape_functions, ShapeFunctions};
use crate::quadrature::GaussLegendre;

/// A scalar time series with its first two derivatives.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Signal {
    pub value: Vec<f64>,
    pub rate: Vec<f64>,
    pub accel: Vec<f64>,
}

impl Signal {
    pub fn zeros(n: usize) -> Self {
        Self {
            value: vec![0.0; n],
            rate: vec![0.0; n],
            accel: vec![0.0; n],
        }
    }

    /// Derivatives by finite differences: central in the interior, second
    /// order one-sided at both ends.
    pub fn from_samples(value: Vec<f64>, dt: f64) -> Self {
        let (rate, accel) = finite_differences(&value, dt);
        Self { value, rate, accel }
    }

    pub fn len(&self) -> usize {
        self.value.len()
    }

    pub fn is_empty(&self) -> bool {
        self.value.is_empty()
    }
}

pub fn finite_differences(v: &[f64], h: f64) -> (Vec<f64>, Vec<f64>) {
    let n = v.len();
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    if n < 4 {
        return (d1, d2);
    }
    for k in 1..n - 1 {
        d1[k] = (v[k + 1] - v[k - 1]) / (2.0 * h);
        d2[k] = (v[k + 1] - 2.0 * v[k] + v[k - 1]) / (h * h);
    }
    let h2 = h * h;
    d1[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    d2[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2;
    let m = n - 1;
    d1[m] = (3.0 * v[m] - 4.0 * v[m - 1] + v[m - 2]) / (2.0 * h);
    d2[m] = (2.0 * v[m] - 5.0 * v[m - 1] + 4.0 * v[m - 2] - v[m - 3]) / h2;
    (d1, d2)
}

/// Boundary inputs at one instant: `e = theta2`, `f` the root curvature,
/// `p` the tip curvature, each with two time derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundaryData {
    pub e: f64,
    pub e_dot: f64,
    pub e_ddot: f64,
    pub f: f64,
    pub f_dot: f64,
    pub f_ddot: f64,
    pub p: f64,
    pub p_dot: f64,
    pub p_ddot: f64,
}

/// Gauss-Legendre nodes on `[0, l2]` with the mode shapes and boundary
/// functions tabulated there.
#[derive(Debug, Clone)]
pub struct SpatialQuadrature {
    pub x: Vec<f64>,
    pub weight: Vec<f64>,
    /// `modes[n-1][i] = v_n(x_i)`.
    pub modes: Vec<Vec<f64>>,
    pub h: Vec<f64>,
    pub q: Vec<f64>,
}

impl SpatialQuadrature {
    pub fn new(basis: &ModalBasis, n_quad: usize) -> Self {
        let shapes = shape_functions(basis.l2);
        let (x, weight) = GaussLegendre::new(n_quad).mapped(0.0, basis.l2);
        let modes = (1..=basis.n_modes)
            .map(|n| x.iter().map(|&xi| basis.v(n, xi)).collect())
            .collect();
        let h = x.iter().map(|&xi| shapes.h.eval(xi)).collect();
        let q = x.iter().map(|&xi| shapes.q.eval(xi)).collect();
        Self {
            x,
            weight,
            modes,
            h,
            q,
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(usize, f64) -> f64) -> f64 {
        self.x
            .iter()
            .zip(&self.weight)
            .enumerate()
            .map(|(i, (&x, &w))| w * f(i, x))
            .sum()
    }
}

/// Deflection `w` and its time derivatives at the quadrature nodes, for one
/// grid time.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldSlice {
    pub w: Vec<f64>,
    pub w_dot: Vec<f64>,
    pub w_ddot: Vec<f64>,
}

impl FieldSlice {
    /// The undeflected link.
    pub fn rigid(n: usize) -> Self {
        Self {
            w: vec![0.0; n],
            w_dot: vec![0.0; n],
            w_ddot: vec![0.0; n],
        }
    }
}

/// Solution of the flexible link on the time grid.
///
/// Stored in modal form: the total displacement is
/// `y(x, t) = sum v_n(x) zeta_n(t) + g(x) e(t) + h(x) f(t) + q(x) p(t)` and the
/// deflection relative to the virtual link is `w = y - x theta2`.
#[derive(Debug, Clone)]
pub struct DeflectionField {
    pub(crate) basis: ModalBasis,
    pub(crate) shapes: ShapeFunctions,
    pub(crate) times: Vec<f64>,
    pub(crate) modes: Vec<ModalResponse>,
    pub(crate) e: Signal,
    pub(crate) f: Signal,
    pub(crate) p: Signal,
}

impl DeflectionField {
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn basis(&self) -> &ModalBasis {
        &self.basis
    }

    pub fn modal_response(&self, n: usize) -> &ModalResponse {
        &self.modes[n - 1]
    }

    pub fn boundary(&self, k: usize) -> BoundaryData {
        BoundaryData {
            e: self.e.value[k],
            e_dot: self.e.rate[k],
            e_ddot: self.e.accel[k],
            f: self.f.value[k],
            f_dot: self.f.rate[k],
            f_ddot: self.f.accel[k],
            p: self.p.value[k],
            p_dot: self.p.rate[k],
            p_ddot: self.p.accel[k],
        }
    }

    fn modal_sum(&self, x: f64, k: usize, pick: impl Fn(&ModalResponse) -> &Vec<f64>) -> f64 {
        self.modes
            .iter()
            .enumerate()
            .map(|(i, m)| self.basis.v(i + 1, x) * pick(m)[k])
            .sum()
    }

    /// Total displacement at `x` and grid index `k`.
    pub fn y(&self, x: f64, k: usize) -> f64 {
        self.w(x, k) + self.shapes.g.eval(x) * self.e.value[k]
    }

    pub fn w(&self, x: f64, k: usize) -> f64 {
        self.modal_sum(x, k, |m| &m.zeta)
            + self.shapes.h.eval(x) * self.f.value[k]
            + self.shapes.q.eval(x) * self.p.value[k]
    }

    pub fn w_dot(&self, x: f64, k: usize) -> f64 {
        self.modal_sum(x, k, |m| &m.zeta_dot)
            + self.shapes.h.eval(x) * self.f.rate[k]
            + self.shapes.q.eval(x) * self.p.rate[k]
    }

    pub fn w_ddot(&self, x: f64, k: usize) -> f64 {
        self.modal_sum(x, k, |m| &m.zeta_ddot)
            + self.shapes.h.eval(x) * self.f.accel[k]
            + self.shapes.q.eval(x) * self.p.accel[k]
    }

    /// Curvature `y''(x, t)`.
    pub fn y_curvature(&self, x: f64, k: usize) -> f64 {
        let modal: f64 = self
            .modes
            .iter()
            .enumerate()
            .map(|(i, m)| self.basis.v_curvature(i + 1, x) * m.zeta[k])
            .sum();
        modal
            + self.shapes.g.d2(x) * self.e.value[k]
            + self.shapes.h.d2(x) * self.f.value[k]
            + self.shapes.q.d2(x) * self.p.value[k]
    }

    pub fn slice(&self, quad: &SpatialQuadrature, k: usize) -> FieldSlice {
        let n = quad.len();
        let mut out = FieldSlice::rigid(n);
        for i in 0..n {
            let (mut w, mut wd, mut wdd) = (0.0, 0.0, 0.0);
            for (m, table) in self.modes.iter().zip(&quad.modes) {
                w += table[i] * m.zeta[k];
                wd += table[i] * m.zeta_dot[k];
                wdd += table[i] * m.zeta_ddot[k];
            }
            out.w[i] = w + quad.h[i] * self.f.value[k] + quad.q[i] * self.p.value[k];
            out.w_dot[i] = wd + quad.h[i] * self.f.rate[k] + quad.q[i] * self.p.rate[k];
            out.w_ddot[i] = wdd + quad.h[i] * self.f.accel[k] + quad.q[i] * self.p.accel[k];
        }
        out
    }

    /// CSV dump `x,t,y,w,w_dot,w_ddot` over `nx` evenly spaced stations,
    /// time-major.
    pub fn write_csv<W: Write>(&self, mut out: W, nx: usize) -> std::io::Result<()> {
        let nx = nx.max(2);
        writeln!(out, "x,t,y,w,w_dot,w_ddot")?;
        for (k, &t) in self.times.iter().enumerate() {
            for j in 0..nx {
                let x = self.basis.l2 * j as f64 / (nx - 1) as f64;
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    x,
                    t,
                    self.y(x, k),
                    self.w(x, k),
                    self.w_dot(x, k),
                    self.w_ddot(x, k)
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finite_differences_are_exact_for_quadratics() {
        let h = 0.01;
        let v: Vec<f64> = (0..20)
            .map(|k| {
                let t = k as f64 * h;
                3.0 * t * t - t + 2.0
            })
            .collect();
        let (d1, d2) = finite_differences(&v, h);
        for (k, (a, b)) in d1.iter().zip(&d2).enumerate() {
            let t = k as f64 * h;
            assert!((a - (6.0 * t - 1.0)).abs() < 1e-10);
            assert!((b - 6.0).abs() < 1e-8);
        }
    }
}
