//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use flexsim::config::Config;
use flexsim::dynamics::JointState;
use flexsim::params::SystemParams;
use flexsim::surface::Point;

/// Adaptive Dormand-Prince 5(4) integration of `y' = f(t, y)` from `t0`,
/// reporting the state at each requested output time (ascending).
pub fn dopri45<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    t0: f64,
    y0: [f64; N],
    outputs: &[f64],
    rtol: f64,
    atol: f64,
) -> Vec<[f64; N]> {
    const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
    const A: [[f64; 6]; 7] = [
        [0.0; 6],
        [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
        [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
        [
            19372.0 / 6561.0,
            -25360.0 / 2187.0,
            64448.0 / 6561.0,
            -212.0 / 729.0,
            0.0,
            0.0,
        ],
        [
            9017.0 / 3168.0,
            -355.0 / 33.0,
            46732.0 / 5247.0,
            49.0 / 176.0,
            -5103.0 / 18656.0,
            0.0,
        ],
        [
            35.0 / 384.0,
            0.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    ];
    const B5: [f64; 7] = [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
        0.0,
    ];
    const B4: [f64; 7] = [
        5179.0 / 57600.0,
        0.0,
        7571.0 / 16695.0,
        393.0 / 640.0,
        -92097.0 / 339200.0,
        187.0 / 2100.0,
        1.0 / 40.0,
    ];

    let mut t = t0;
    let mut y = y0;
    let mut h: f64 = 1e-4;
    let mut out = Vec::with_capacity(outputs.len());
    for &target in outputs {
        while target - t > 1e-14 * target.abs().max(1.0) {
            let step = h.min(target - t);
            let mut k = [[0.0; N]; 7];
            for s in 0..7 {
                let mut ys = y;
                for (j, kj) in k.iter().enumerate().take(s) {
                    for d in 0..N {
                        ys[d] += step * A[s][j] * kj[d];
                    }
                }
                k[s] = f(t + C[s] * step, &ys);
            }
            let mut y5 = y;
            let mut err: f64 = 0.0;
            for d in 0..N {
                let (mut s5, mut s4) = (0.0, 0.0);
                for s in 0..7 {
                    s5 += B5[s] * k[s][d];
                    s4 += B4[s] * k[s][d];
                }
                y5[d] += step * s5;
                let scale = atol + rtol * y[d].abs().max(y5[d].abs());
                err = err.max((step * (s5 - s4)).abs() / scale);
            }
            if err <= 1.0 {
                t += step;
                y = y5;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            h = step * factor;
        }
        out.push(y);
    }
    out
}

/// Rigid two-link reference built from the kinetic energy by numerical
/// Euler-Lagrange differentiation. Parameters (tip mass in particular) are
/// frozen at the evaluation time.
pub struct RigidOracle<'a> {
    pub params: &'a SystemParams,
}

impl<'a> RigidOracle<'a> {
    pub fn new(params: &'a SystemParams) -> Self {
        Self { params }
    }

    fn tip(&self, q: [f64; 2]) -> [f64; 2] {
        let p = self.params;
        [
            p.l1 * q[0].cos() + p.l2 * q[1].cos(),
            p.l1 * q[0].sin() + p.l2 * q[1].sin(),
        ]
    }

    pub fn kinetic_energy(&self, t: f64, q: [f64; 2], qd: [f64; 2]) -> f64 {
        let p = self.params;
        let m2 = p.rho2 * p.l2;
        let i2 = m2 * p.l2 * p.l2 / 3.0;
        let m3 = p.m3_base + p.m3_growth * t / p.duration;
        let hub1 = p.ih1_factor * p.i1;
        let hub2 = p.ih2_factor * i2;
        // joint-2 velocity and the tip velocity
        let j2 = [-p.l1 * q[0].sin() * qd[0], p.l1 * q[0].cos() * qd[0]];
        let tip = [
            j2[0] - p.l2 * q[1].sin() * qd[1],
            j2[1] + p.l2 * q[1].cos() * qd[1],
        ];
        let perp = [-q[1].sin() * qd[1], q[1].cos() * qd[1]];
        0.5 * (p.i1 + hub1) * qd[0] * qd[0]
            + 0.5 * m2 * (j2[0] * j2[0] + j2[1] * j2[1])
            + m2 * p.xbar2 * (j2[0] * perp[0] + j2[1] * perp[1])
            + 0.5 * (i2 + hub2) * qd[1] * qd[1]
            + 0.5 * m3 * (tip[0] * tip[0] + tip[1] * tip[1])
    }

    /// Euler-Lagrange joint torques `d/dt dT/dqd - dT/dq`.
    pub fn lagrange(&self, s: &JointState) -> [f64; 2] {
        let q = [s.theta1, s.theta2];
        let qd = [s.dtheta1, s.dtheta2];
        let qdd = [s.ddtheta1, s.ddtheta2];
        let ke = |q: [f64; 2], qd: [f64; 2]| self.kinetic_energy(s.t, q, qd);
        let bump = |v: [f64; 2], i: usize, h: f64| {
            let mut v = v;
            v[i] += h;
            v
        };
        let dke_dqd = |q: [f64; 2], qd: [f64; 2], i: usize| {
            let h = 1e-3;
            (ke(q, bump(qd, i, h)) - ke(q, bump(qd, i, -h))) / (2.0 * h)
        };
        let mut tau = [0.0; 2];
        for (i, tau_i) in tau.iter_mut().enumerate() {
            let mut total = 0.0;
            for j in 0..2 {
                let hv = 1e-3;
                let mass =
                    (dke_dqd(q, bump(qd, j, hv), i) - dke_dqd(q, bump(qd, j, -hv), i)) / (2.0 * hv);
                let hq = 1e-5;
                let mixed =
                    (dke_dqd(bump(q, j, hq), qd, i) - dke_dqd(bump(q, j, -hq), qd, i)) / (2.0 * hq);
                total += mass * qdd[j] + mixed * qd[j];
            }
            let hq = 1e-6;
            total -= (ke(bump(q, i, hq), qd) - ke(bump(q, i, -hq), qd)) / (2.0 * hq);
            *tau_i = total;
        }
        tau
    }

    /// Tip acceleration from a second difference along the local path.
    pub fn tip_acceleration(&self, s: &JointState) -> [f64; 2] {
        let path = |h: f64| {
            self.tip([
                s.theta1 + h * s.dtheta1 + 0.5 * h * h * s.ddtheta1,
                s.theta2 + h * s.dtheta2 + 0.5 * h * h * s.ddtheta2,
            ])
        };
        let h = 1e-4;
        let (a, b, c) = (path(-h), path(0.0), path(h));
        [
            (a[0] - 2.0 * b[0] + c[0]) / (h * h),
            (a[1] - 2.0 * b[1] + c[1]) / (h * h),
        ]
    }

    /// Spring plus tip-inertia force at contact point `r`.
    pub fn contact_force(&self, s: &JointState, r: Point) -> [f64; 2] {
        let p = self.params;
        let m3 = p.m3_base + p.m3_growth * s.t / p.duration;
        let tip = self.tip([s.theta1, s.theta2]);
        let acc = self.tip_acceleration(s);
        [
            p.ks * (r.x - tip[0]) - m3 * acc[0],
            p.ks * (r.y - tip[1]) - m3 * acc[1],
        ]
    }

    /// Joint torques of a force at the tip, mapped through the tip
    /// displacement per unit `theta1` (inter-link angle fixed) and per unit
    /// inter-link angle.
    pub fn force_torque(&self, s: &JointState, f: [f64; 2]) -> [f64; 2] {
        let at = |a: f64, phi: f64| self.tip([a, a + phi]);
        let (a, phi) = (s.theta1, s.theta2 - s.theta1);
        let h = 1e-6;
        let d1 = {
            let (p, m) = (at(a + h, phi), at(a - h, phi));
            [(p[0] - m[0]) / (2.0 * h), (p[1] - m[1]) / (2.0 * h)]
        };
        let d2 = {
            let (p, m) = (at(a, phi + h), at(a, phi - h));
            [(p[0] - m[0]) / (2.0 * h), (p[1] - m[1]) / (2.0 * h)]
        };
        [d1[0] * f[0] + d1[1] * f[1], d2[0] * f[0] + d2[1] * f[1]]
    }

    pub fn torques(&self, s: &JointState, r: Point) -> [f64; 2] {
        let el = self.lagrange(s);
        let tr = self.force_torque(s, self.contact_force(s, r));
        [el[0] + tr[0], el[1] + tr[1]]
    }
}

pub fn stiff_config() -> Config {
    let mut cfg = Config::default();
    cfg.params.ei *= 1e6;
    cfg.params.ks = 0.0;
    cfg
}

/// Largest `|a - b| / max(|b|, floor)` over paired samples.
pub fn max_rel_err(a: &[f64], b: &[f64], floor: f64) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / y.abs().max(floor))
        .fold(0.0, f64::max)
}

pub fn rel_l2(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    let den: f64 = b.iter().map(|y| y * y).sum();
    (num / den).sqrt()
}
