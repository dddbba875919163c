//! Equations of motion of the rigid-flexible arm and the inverse-dynamics
//! pipeline.
//!
//! Joint angles are absolute (virtual-link) angles: `theta2` points from
//! joint 2 to the tip mass, and the link deflection `w` is measured
//! transverse to that line. The arm moves in the horizontal plane, so there
//! is no gravity term, and joint friction is not modelled.

use nalgebra::{Matrix2, Vector2};

use crate::error::{Error, Result};
use crate::flexbeam::{BeamModel, DeflectionField, FieldSlice, SpatialQuadrature, TipBoundary};
use crate::params::SystemParams;
use crate::profile::{MotionProfile, ProfileSample};
use crate::surface::{ContactPoint, Point, RotatingParabola};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct JointState {
    pub theta1: f64,
    pub theta2: f64,
    pub dtheta1: f64,
    pub dtheta2: f64,
    pub ddtheta1: f64,
    pub ddtheta2: f64,
    pub t: f64,
}

impl JointState {
    pub fn from_samples(t: f64, j1: ProfileSample, j2: ProfileSample) -> Self {
        Self {
            theta1: j1.value,
            theta2: j2.value,
            dtheta1: j1.rate,
            dtheta2: j2.rate,
            ddtheta1: j1.accel,
            ddtheta2: j2.accel,
            t,
        }
    }

    /// A motionless arm at the given angles.
    pub fn at_rest(theta1: f64, theta2: f64, t: f64) -> Self {
        Self {
            theta1,
            theta2,
            t,
            ..Default::default()
        }
    }

    pub fn accel(&self) -> Vector2<f64> {
        Vector2::new(self.ddtheta1, self.ddtheta2)
    }

    pub fn is_finite(&self) -> bool {
        [
            self.theta1,
            self.theta2,
            self.dtheta1,
            self.dtheta2,
            self.ddtheta1,
            self.ddtheta2,
            self.t,
        ]
        .iter()
        .all(|v| v.is_finite())
    }
}

/// Joint-angle trajectories for both joints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointProfiles {
    pub theta1: MotionProfile,
    pub theta2: MotionProfile,
}

impl JointProfiles {
    pub fn state(&self, t: f64) -> Result<JointState> {
        Ok(JointState::from_samples(
            t,
            self.theta1.evaluate(t)?,
            self.theta2.evaluate(t)?,
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactForce {
    pub fx: f64,
    pub fy: f64,
    pub fmag: f64,
    /// Joint torques produced by the contact force, `J^T F`.
    pub tau_r: Vector2<f64>,
}

/// Joint torques split by origin; `tau = inertial + coriolis + contact`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorqueRecord {
    pub tau1: f64,
    pub tau2: f64,
    pub inertial: Vector2<f64>,
    pub coriolis: Vector2<f64>,
    pub contact: Vector2<f64>,
}

impl TorqueRecord {
    fn new(inertial: Vector2<f64>, coriolis: Vector2<f64>, contact: Vector2<f64>) -> Self {
        Self {
            tau1: inertial[0] + coriolis[0] + contact[0],
            tau2: inertial[1] + coriolis[1] + contact[1],
            inertial,
            coriolis,
            contact,
        }
    }

    pub fn tau(&self) -> Vector2<f64> {
        Vector2::new(self.tau1, self.tau2)
    }
}

/// Rigid end-effector position `(l1 cos th1 + l2 cos th2, l1 sin th1 + l2 sin th2)`.
pub fn tip_position(params: &SystemParams, theta1: f64, theta2: f64) -> Point {
    Point::new(
        params.l1 * theta1.cos() + params.l2 * theta2.cos(),
        params.l1 * theta1.sin() + params.l2 * theta2.sin(),
    )
}

/// Rigid coupling coefficient `m2 l1 xbar2 + m3 l1 l2`.
fn coupling(params: &SystemParams, t: f64) -> f64 {
    params.l1 * (params.m2() * params.xbar2 + params.tip_mass_unchecked(t) * params.l2)
}

pub fn inertia_matrix(
    params: &SystemParams,
    state: &JointState,
    quad: &SpatialQuadrature,
    field: &FieldSlice,
) -> Matrix2<f64> {
    let m3 = params.tip_mass_unchecked(state.t);
    let (sin_d, cos_d) = (state.theta2 - state.theta1).sin_cos();
    let rho = params.rho2;
    let m11 = params.i1 + params.ih1() + (params.m2() + m3) * params.l1 * params.l1;
    let w_moment = quad.integrate(|i, _| rho * params.l1 * field.w[i] * sin_d);
    let m12 = coupling(params, state.t) * cos_d - w_moment;
    let w_square = quad.integrate(|i, _| rho * field.w[i] * field.w[i]);
    let m22 = params.i2() + params.ih2() + m3 * params.l2 * params.l2 + w_square;
    Matrix2::new(m11, m12, m12, m22)
}

/// Coriolis, centripetal and deflection-rate terms.
pub fn coriolis(
    params: &SystemParams,
    state: &JointState,
    quad: &SpatialQuadrature,
    field: &FieldSlice,
) -> Vector2<f64> {
    let (sin_d, cos_d) = (state.theta2 - state.theta1).sin_cos();
    let rho = params.rho2;
    let l1 = params.l1;
    let (w1, w2) = (state.dtheta1, state.dtheta2);
    let c = coupling(params, state.t);

    let flex1 = quad.integrate(|i, _| {
        let (w, wd, wdd) = (field.w[i], field.w_dot[i], field.w_ddot[i]);
        rho * l1 * ((wdd - w * w2 * w2) * cos_d - 2.0 * wd * w2 * sin_d)
    });
    let flex2 = quad.integrate(|i, x| {
        let (w, wd, wdd) = (field.w[i], field.w_dot[i], field.w_ddot[i]);
        rho * (-2.0 * w * wd * w2 + x * wdd + l1 * w * w1 * w1 * cos_d)
    });
    Vector2::new(-c * w2 * w2 * sin_d + flex1, c * w1 * w1 * sin_d + flex2)
}

/// Contact Jacobian transpose, rows `(-l1 s1 - l2 s2, l1 c1 + l2 c2)` and
/// `(-l2 s2, l2 c2)`.
///
/// Row 1 is the tip velocity per unit `theta1` with the inter-link angle
/// `theta2 - theta1` held fixed; row 2 is the tip velocity per unit
/// inter-link angle.
pub fn jacobian_transpose(params: &SystemParams, state: &JointState) -> Matrix2<f64> {
    let (s1, c1) = state.theta1.sin_cos();
    let (s2, c2) = state.theta2.sin_cos();
    let (l1, l2) = (params.l1, params.l2);
    Matrix2::new(-l1 * s1 - l2 * s2, l1 * c1 + l2 * c2, -l2 * s2, l2 * c2)
}

/// Spring contact force plus the tip-mass inertial force, and its joint
/// torques.
pub fn contact_forces(params: &SystemParams, state: &JointState, r: Point) -> ContactForce {
    let m3 = params.tip_mass_unchecked(state.t);
    let (s1, c1) = state.theta1.sin_cos();
    let (s2, c2) = state.theta2.sin_cos();
    let (l1, l2) = (params.l1, params.l2);
    let (w1, w2) = (state.dtheta1, state.dtheta2);
    let (a1, a2) = (state.ddtheta1, state.ddtheta2);
    let tip = tip_position(params, state.theta1, state.theta2);

    let fx = params.ks * (r.x - tip.x)
        + m3 * (l1 * a1 * s1 + l1 * w1 * w1 * c1 + l2 * a2 * s2 + l2 * w2 * w2 * c2);
    let fy = params.ks * (r.y - tip.y)
        + m3 * (l1 * w1 * w1 * s1 - l1 * a1 * c1 + l2 * w2 * w2 * s2 - l2 * a2 * c2);
    let tau_r = jacobian_transpose(params, state) * Vector2::new(fx, fy);
    ContactForce {
        fx,
        fy,
        fmag: fx.hypot(fy),
        tau_r,
    }
}

/// Joint torques for one state and deflection slice.
pub fn joint_torques(
    params: &SystemParams,
    state: &JointState,
    quad: &SpatialQuadrature,
    field: &FieldSlice,
    force: &ContactForce,
) -> TorqueRecord {
    let inertial = inertia_matrix(params, state, quad, field) * state.accel();
    TorqueRecord::new(inertial, coriolis(params, state, quad, field), force.tau_r)
}

/// Everything one inverse-dynamics run produces, indexed by grid time.
#[derive(Debug, Clone)]
pub struct Run {
    pub times: Vec<f64>,
    pub states: Vec<JointState>,
    pub alpha: Vec<f64>,
    pub contacts: Vec<ContactPoint>,
    pub forces: Vec<ContactForce>,
    /// Torques of the undeflected arm; they set the root curvature of the beam.
    pub rigid: Vec<TorqueRecord>,
    pub torques: Vec<TorqueRecord>,
    pub field: DeflectionField,
}

struct Kinematics {
    times: Vec<f64>,
    j1: Vec<ProfileSample>,
    j2: Vec<ProfileSample>,
    states: Vec<JointState>,
    contacts: Vec<ContactPoint>,
    forces: Vec<ContactForce>,
}

fn check_durations(
    params: &SystemParams,
    joints: &JointProfiles,
    surface: &RotatingParabola,
) -> Result<()> {
    let t = params.duration;
    for (name, d) in [
        ("theta1 profile", joints.theta1.duration),
        ("theta2 profile", joints.theta2.duration),
        ("surface profile", surface.duration()),
    ] {
        if (d - t).abs() > 1e-12 * t {
            return Err(Error::invalid(
                name,
                format!("duration {d} differs from T = {t}"),
            ));
        }
    }
    Ok(())
}

fn kinematics(
    params: &SystemParams,
    joints: &JointProfiles,
    surface: &RotatingParabola,
) -> Result<Kinematics> {
    params.validate()?;
    check_durations(params, joints, surface)?;
    let times = params.time_grid();
    let n = times.len();
    let mut k = Kinematics {
        j1: Vec::with_capacity(n),
        j2: Vec::with_capacity(n),
        states: Vec::with_capacity(n),
        contacts: Vec::with_capacity(n),
        forces: Vec::with_capacity(n),
        times,
    };
    for &t in &k.times {
        let (a, b) = (joints.theta1.evaluate(t)?, joints.theta2.evaluate(t)?);
        let state = JointState::from_samples(t, a, b);
        let tip = tip_position(params, state.theta1, state.theta2);
        let contact = surface.contact_point(tip, t)?;
        k.forces.push(contact_forces(params, &state, contact.r));
        k.contacts.push(contact);
        k.states.push(state);
        k.j1.push(a);
        k.j2.push(b);
    }
    Ok(k)
}

fn rigid_series(
    params: &SystemParams,
    quad: &SpatialQuadrature,
    k: &Kinematics,
) -> Vec<TorqueRecord> {
    let rigid = FieldSlice::rigid(quad.len());
    k.states
        .iter()
        .zip(&k.forces)
        .map(|(s, f)| joint_torques(params, s, quad, &rigid, f))
        .collect()
}

/// Torques of the arm with the flexible link held straight.
pub fn rigid_torque(
    params: &SystemParams,
    joints: &JointProfiles,
    surface: &RotatingParabola,
) -> Result<Vec<TorqueRecord>> {
    let k = kinematics(params, joints, surface)?;
    let quad = SpatialQuadrature::new(
        &crate::flexbeam::ModalBasis::from_params(params)?,
        params.n_quad,
    );
    Ok(rigid_series(params, &quad, &k))
}

/// Full inverse-dynamics pipeline with the default tip boundary condition.
pub fn inverse_dynamics(
    params: &SystemParams,
    joints: &JointProfiles,
    surface: &RotatingParabola,
) -> Result<Run> {
    inverse_dynamics_with(params, joints, surface, TipBoundary::default())
}

/// Inverse dynamics in four steps: sample the joint profiles; compute the
/// rigid-arm torques; solve the flexible link with the rigid joint-2 torque
/// as its root moment; evaluate the full equations of motion with the
/// deflection field.
pub fn inverse_dynamics_with(
    params: &SystemParams,
    joints: &JointProfiles,
    surface: &RotatingParabola,
    tip: TipBoundary,
) -> Result<Run> {
    let k = kinematics(params, joints, surface)?;
    let beam = BeamModel::new(params)?;
    let rigid = rigid_series(params, &beam.quadrature, &k);
    let tau2: Vec<f64> = rigid.iter().map(|r| r.tau2).collect();
    let field = beam.solve(&k.times, &k.j1, &k.j2, &tau2, tip)?;

    let torques = k
        .states
        .iter()
        .zip(&k.forces)
        .enumerate()
        .map(|(i, (s, f))| {
            joint_torques(
                params,
                s,
                &beam.quadrature,
                &field.slice(&beam.quadrature, i),
                f,
            )
        })
        .collect();
    let alpha = k.times.iter().map(|&t| surface.surface_angle(t)).collect();
    Ok(Run {
        times: k.times,
        states: k.states,
        alpha,
        contacts: k.contacts,
        forces: k.forces,
        rigid,
        torques,
        field,
    })
}
