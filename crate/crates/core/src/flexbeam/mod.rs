//! Flexible link as an Euler-Bernoulli beam with time-dependent boundary
//! conditions, solved by assumed modes.
//!
//! The displacement is split into pinned-pinned modes plus three cubic
//! boundary functions that carry the prescribed end displacement (`g`), root
//! curvature (`h`) and tip curvature (`q`). Substituting into the beam
//! equation and projecting on each mode leaves independent undamped
//! oscillators driven by the boundary accelerations and the base motion of
//! joint 2; those are integrated by the Duhamel convolution.

pub mod duhamel;
pub mod field;
pub mod modes;
pub mod shape;

pub use duhamel::{duhamel, duhamel_trapezoid, ModalResponse};
pub use field::{BoundaryData, DeflectionField, FieldSlice, Signal, SpatialQuadrature};
pub use modes::{modal_constants, ModalBasis, ModalConstants};
pub use shape::{shape_functions, Cubic, ShapeFunctions};

use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::profile::ProfileSample;

const TIP_ITER_MAX: usize = 100;

/// How the tip-curvature boundary condition is formed from the tip rotary
/// inertia `I3(t)`, the first natural frequency and the first-mode end slope
/// `v1'(l2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TipBoundary {
    /// `p = omega1^2 v1'(l2) I3(t) zeta1(t) / EI`: the bending moment of the
    /// tip inertia following the first mode, expressed as a curvature.
    /// Vanishes with the deflection, so a stiff link recovers the rigid arm.
    #[default]
    ModalMoment,
    /// `p = omega1^2 v1'(l2) I3(t)` taken as a curvature directly. Independent
    /// of the motion and grows linearly with `EI`.
    Literal,
}

/// `omega1^2 v1'(l2) I3(t)`, the tip-inertia coefficient shared by both
/// [`TipBoundary`] forms.
pub fn tip_coefficient(params: &SystemParams, basis: &ModalBasis, t: f64) -> f64 {
    let omega1 = basis.omega[0];
    omega1 * omega1 * basis.v_slope(1, basis.l2) * params.tip_inertia_unchecked(t)
}

/// Boundary data at grid index `k` with the literal tip curvature.
///
/// `e` and its derivatives come from the joint-2 profile; `f = -tau2 / EI`
/// and `p` are differentiated on the grid.
pub fn boundary_data(
    params: &SystemParams,
    basis: &ModalBasis,
    theta2: &[ProfileSample],
    tau2_rigid: &[f64],
    times: &[f64],
    k: usize,
) -> BoundaryData {
    let (e, f, p) = literal_boundary(params, basis, theta2, tau2_rigid, times);
    BoundaryData {
        e: e.value[k],
        e_dot: e.rate[k],
        e_ddot: e.accel[k],
        f: f.value[k],
        f_dot: f.rate[k],
        f_ddot: f.accel[k],
        p: p.value[k],
        p_dot: p.rate[k],
        p_ddot: p.accel[k],
    }
}

fn literal_boundary(
    params: &SystemParams,
    basis: &ModalBasis,
    theta2: &[ProfileSample],
    tau2_rigid: &[f64],
    times: &[f64],
) -> (Signal, Signal, Signal) {
    let e = Signal {
        value: theta2.iter().map(|s| s.value).collect(),
        rate: theta2.iter().map(|s| s.rate).collect(),
        accel: theta2.iter().map(|s| s.accel).collect(),
    };
    let f = Signal::from_samples(
        tau2_rigid.iter().map(|tau| -tau / params.ei).collect(),
        params.dt,
    );
    let p = Signal::from_samples(
        times
            .iter()
            .map(|&t| tip_coefficient(params, basis, t))
            .collect(),
        params.dt,
    );
    (e, f, p)
}

/// Joint-1 base-motion term `theta1'' cos(theta2 - theta1) + theta1'^2 sin(theta2 - theta1)`.
pub fn base_motion(theta1: ProfileSample, theta2: ProfileSample) -> f64 {
    let (s, c) = (theta2.value - theta1.value).sin_cos();
    theta1.accel * c + theta1.rate * theta1.rate * s
}

/// Generalised force on mode `n` (1-based):
/// `-(G_n e'' + H_n f'' + Q_n p'') - rho2 l1 [base motion] int v_n dx`.
pub fn modal_forcing(
    params: &SystemParams,
    basis: &ModalBasis,
    constants: &ModalConstants,
    bdata: &BoundaryData,
    theta1: ProfileSample,
    theta2: ProfileSample,
    n: usize,
) -> f64 {
    let i = n - 1;
    -(constants.g_mass[i] * bdata.e_ddot
        + constants.h_mass[i] * bdata.f_ddot
        + constants.q_mass[i] * bdata.p_ddot)
        - params.rho2 * params.l1 * base_motion(theta1, theta2) * basis.integral(n)
}

/// Precomputed modal machinery for one parameter set.
#[derive(Debug, Clone)]
pub struct BeamModel {
    pub params: SystemParams,
    pub basis: ModalBasis,
    pub constants: ModalConstants,
    pub quadrature: SpatialQuadrature,
    pub shapes: ShapeFunctions,
}

impl BeamModel {
    pub fn new(params: &SystemParams) -> Result<Self> {
        let basis = ModalBasis::from_params(params)?;
        Ok(Self {
            constants: modal_constants(&basis),
            quadrature: SpatialQuadrature::new(&basis, params.n_quad),
            shapes: shape_functions(params.l2),
            params: params.clone(),
            basis,
        })
    }

    /// Solve for the deflection field given the sampled joint motion and the
    /// rigid-arm estimate of the joint-2 torque (which sets the root curvature).
    pub fn solve(
        &self,
        times: &[f64],
        theta1: &[ProfileSample],
        theta2: &[ProfileSample],
        tau2_rigid: &[f64],
        tip: TipBoundary,
    ) -> Result<DeflectionField> {
        let n_t = times.len();
        assert!(theta1.len() == n_t && theta2.len() == n_t && tau2_rigid.len() == n_t);
        let (e, f, literal_p) =
            literal_boundary(&self.params, &self.basis, theta2, tau2_rigid, times);
        let mut p = match tip {
            TipBoundary::Literal => literal_p,
            TipBoundary::ModalMoment => Signal::zeros(n_t),
        };
        // Forcing terms that do not depend on p.
        let fixed: Vec<Vec<f64>> = (1..=self.basis.n_modes)
            .map(|n| {
                (0..n_t)
                    .map(|k| {
                        let b = BoundaryData {
                            e_ddot: e.accel[k],
                            f_ddot: f.accel[k],
                            ..Default::default()
                        };
                        modal_forcing(
                            &self.params,
                            &self.basis,
                            &self.constants,
                            &b,
                            theta1[k],
                            theta2[k],
                            n,
                        )
                    })
                    .collect()
            })
            .collect();

        let mut iteration = 0;
        let mut modes = self.respond(&fixed, &p.accel);
        if tip == TipBoundary::ModalMoment {
            loop {
                let next = self.modal_moment_curvature(times, &modes[0]);
                let residual =
                    max_abs_diff(&next.value, &p.value).max(max_abs_diff(&next.accel, &p.accel));
                let scale = 1.0 + next.accel.iter().fold(0.0f64, |m, v| m.max(v.abs()));
                p = next;
                modes = self.respond(&fixed, &p.accel);
                iteration += 1;
                if residual <= 1e-13 * scale {
                    break;
                }
                if iteration >= TIP_ITER_MAX {
                    return Err(Error::BoundaryIteration { residual });
                }
            }
        }

        Ok(DeflectionField {
            basis: self.basis.clone(),
            shapes: self.shapes,
            times: times.to_vec(),
            modes,
            e,
            f,
            p,
        })
    }

    fn respond(&self, fixed: &[Vec<f64>], p_accel: &[f64]) -> Vec<ModalResponse> {
        fixed
            .iter()
            .enumerate()
            .map(|(i, base)| {
                let forcing: Vec<f64> = base
                    .iter()
                    .zip(p_accel)
                    .map(|(b, pdd)| b - self.constants.q_mass[i] * pdd)
                    .collect();
                duhamel(&forcing, self.basis.omega[i], self.params.dt)
            })
            .collect()
    }

    /// Tip curvature from the tip-inertia moment of the first mode, with
    /// analytic time derivatives (`I3` is affine in t).
    fn modal_moment_curvature(&self, times: &[f64], first: &ModalResponse) -> Signal {
        let params = &self.params;
        let omega1 = self.basis.omega[0];
        let slope = self.basis.v_slope(1, self.basis.l2);
        let gain = omega1 * omega1 * slope * params.k_gyr * params.k_gyr / params.ei;
        let mass_rate = params.m3_growth / params.duration;
        let mut out = Signal::zeros(times.len());
        for (k, &t) in times.iter().enumerate() {
            let m3 = params.tip_mass_unchecked(t);
            let (z, zd, zdd) = (first.zeta[k], first.zeta_dot[k], first.zeta_ddot[k]);
            out.value[k] = gain * m3 * z;
            out.rate[k] = gain * (mass_rate * z + m3 * zd);
            out.accel[k] = gain * (2.0 * mass_rate * zd + m3 * zdd);
        }
        out
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::default_params;
    use crate::profile::{MotionProfile, ProfileShape};

    fn samples(p: &MotionProfile, times: &[f64]) -> Vec<ProfileSample> {
        times.iter().map(|&t| p.evaluate(t).unwrap()).collect()
    }

    #[test]
    fn zero_torque_gives_zero_root_curvature() {
        let params = default_params();
        let basis = ModalBasis::from_params(&params).unwrap();
        let times = params.time_grid();
        let th2 = MotionProfile::new(ProfileShape::Sine, 1.0, 1.5, 5.0).unwrap();
        let tau = vec![0.0; times.len()];
        let b = boundary_data(&params, &basis, &samples(&th2, &times), &tau, &times, 300);
        assert_eq!(b.f, 0.0);
        assert_eq!(b.e, th2.evaluate(times[300]).unwrap().value);
    }

    #[test]
    fn constant_joint_gives_constant_e() {
        let params = default_params();
        let basis = ModalBasis::from_params(&params).unwrap();
        let times = params.time_grid();
        let th2 = MotionProfile::constant(0.7, 5.0).unwrap();
        let tau = vec![0.0; times.len()];
        for k in [0, 500, 1000] {
            let b = boundary_data(&params, &basis, &samples(&th2, &times), &tau, &times, k);
            assert_eq!((b.e, b.e_dot, b.e_ddot), (0.7, 0.0, 0.0));
        }
    }

    #[test]
    fn literal_tip_curvature_is_affine_in_time() {
        let params = default_params();
        let basis = ModalBasis::from_params(&params).unwrap();
        let times = params.time_grid();
        let th2 = MotionProfile::constant(0.7, 5.0).unwrap();
        let tau = vec![0.0; times.len()];
        let s = samples(&th2, &times);
        let first = boundary_data(&params, &basis, &s, &tau, &times, 0);
        for k in [0, 1, 400, 999, 1000] {
            let b = boundary_data(&params, &basis, &s, &tau, &times, k);
            assert!(b.p_ddot.abs() < 1e-6);
            assert!((b.p_dot - first.p_dot).abs() < 1e-9);
        }
    }

    #[test]
    fn forcing_isolation() {
        let params = default_params();
        let basis = ModalBasis::from_params(&params).unwrap();
        let c = modal_constants(&basis);
        let rest = ProfileSample {
            value: 0.3,
            rate: 0.0,
            accel: 0.0,
        };
        let zero = BoundaryData::default();
        for n in 1..=3 {
            assert_eq!(
                modal_forcing(&params, &basis, &c, &zero, rest, rest, n),
                0.0
            );
            let unit = BoundaryData {
                e_ddot: 1.0,
                ..Default::default()
            };
            assert_eq!(
                modal_forcing(&params, &basis, &c, &unit, rest, rest, n),
                -c.g_mass[n - 1]
            );
        }
        let moving = ProfileSample {
            value: 0.3,
            rate: 0.4,
            accel: 0.9,
        };
        let other = ProfileSample {
            value: 0.8,
            rate: 0.0,
            accel: 0.0,
        };
        assert_eq!(
            modal_forcing(&params, &basis, &c, &zero, moving, other, 2),
            0.0
        );
        assert!(modal_forcing(&params, &basis, &c, &zero, moving, other, 1) != 0.0);
    }
}
