//! Rest-to-rest scalar trajectories used for the joint angles and the
//! surface rotation angle.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{check_time, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileShape {
    /// Half-cosine position, sinusoidal velocity.
    Sine,
    /// Quintic with zero rate and acceleration at both ends.
    Polynomial,
    /// Bell-shaped velocity (a Gaussian lowered so it vanishes at the ends).
    GaussianVelocity,
    /// Quadratic in time; starts at rest but ends moving.
    Parabolic,
}

impl ProfileShape {
    pub const ALL: [ProfileShape; 4] = [
        ProfileShape::Sine,
        ProfileShape::GaussianVelocity,
        ProfileShape::Polynomial,
        ProfileShape::Parabolic,
    ];

    /// Shapes usable for joint motion (the rest-to-rest ones).
    pub const JOINT: [ProfileShape; 3] = [
        ProfileShape::Sine,
        ProfileShape::Polynomial,
        ProfileShape::GaussianVelocity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProfileShape::Sine => "sine",
            ProfileShape::Polynomial => "polynomial",
            ProfileShape::GaussianVelocity => "gaussian",
            ProfileShape::Parabolic => "parabolic",
        }
    }

    pub fn is_rest_to_rest(self) -> bool {
        !matches!(self, ProfileShape::Parabolic)
    }
}

impl fmt::Display for ProfileShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProfileShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sine" => Ok(ProfileShape::Sine),
            "polynomial" | "poly" => Ok(ProfileShape::Polynomial),
            "gaussian" | "gauss" => Ok(ProfileShape::GaussianVelocity),
            "parabolic" => Ok(ProfileShape::Parabolic),
            other => Err(Error::invalid(
                "profile",
                format!("unknown shape `{other}` (sine|polynomial|gaussian|parabolic)"),
            )),
        }
    }
}

/// Value, rate and acceleration of a profile at one instant.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ProfileSample {
    pub value: f64,
    pub rate: f64,
    pub accel: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MotionProfile {
    pub shape: ProfileShape,
    pub start_value: f64,
    pub end_value: f64,
    pub duration: f64,
}

/// Width of the Gaussian velocity bell relative to the duration.
const GAUSS_SIGMA_FRACTION: f64 = 1.0 / 6.0;

impl MotionProfile {
    pub fn new(
        shape: ProfileShape,
        start_value: f64,
        end_value: f64,
        duration: f64,
    ) -> Result<Self> {
        if !(duration.is_finite() && duration > 0.0) {
            return Err(Error::invalid("duration", "must be finite and > 0"));
        }
        if !(start_value.is_finite() && end_value.is_finite()) {
            return Err(Error::invalid("profile", "endpoints must be finite"));
        }
        Ok(Self {
            shape,
            start_value,
            end_value,
            duration,
        })
    }

    /// A profile that holds `value` for the whole duration.
    pub fn constant(value: f64, duration: f64) -> Result<Self> {
        Self::new(ProfileShape::Polynomial, value, value, duration)
    }

    pub fn evaluate(&self, t: f64) -> Result<ProfileSample> {
        check_time(t, self.duration)?;
        Ok(self.sample(t.clamp(0.0, self.duration)))
    }

    pub(crate) fn sample(&self, t: f64) -> ProfileSample {
        let (frac, dfrac, ddfrac) = self.unit_profile(t);
        let delta = self.end_value - self.start_value;
        let value = if frac == 0.0 {
            self.start_value
        } else if frac == 1.0 {
            self.end_value
        } else {
            self.start_value + delta * frac
        };
        ProfileSample {
            value,
            rate: delta * dfrac,
            accel: delta * ddfrac,
        }
    }

    /// Normalised profile going 0 -> 1 and its time derivatives.
    fn unit_profile(&self, t: f64) -> (f64, f64, f64) {
        let big_t = self.duration;
        let s = t / big_t;
        if t >= big_t {
            let (_, d, dd) = self.unit_profile_raw(big_t, 1.0);
            return (1.0, d, dd);
        }
        if t <= 0.0 {
            let (_, d, dd) = self.unit_profile_raw(0.0, 0.0);
            return (0.0, d, dd);
        }
        self.unit_profile_raw(t, s)
    }

    fn unit_profile_raw(&self, t: f64, s: f64) -> (f64, f64, f64) {
        let big_t = self.duration;
        match self.shape {
            ProfileShape::Sine => {
                let arg = PI * s;
                (
                    0.5 * (1.0 - arg.cos()),
                    0.5 * PI * arg.sin() / big_t,
                    0.5 * PI * PI * arg.cos() / (big_t * big_t),
                )
            }
            ProfileShape::Polynomial => {
                let s2 = s * s;
                let s3 = s2 * s;
                (
                    s3 * (10.0 - 15.0 * s + 6.0 * s2),
                    30.0 * s2 * (1.0 - s) * (1.0 - s) / big_t,
                    60.0 * s * (1.0 - 3.0 * s + 2.0 * s2) / (big_t * big_t),
                )
            }
            ProfileShape::GaussianVelocity => {
                let g = LoweredGaussian::new(big_t);
                (
                    g.integral(t) / g.total,
                    g.height(t) / g.total,
                    g.slope(t) / g.total,
                )
            }
            ProfileShape::Parabolic => (s * s, 2.0 * s / big_t, 2.0 / (big_t * big_t)),
        }
    }
}

/// `exp(-(t - T/2)^2 / (2 sigma^2)) - exp(-(T/2)^2 / (2 sigma^2))`, which is
/// zero at both ends of `[0, T]`.
struct LoweredGaussian {
    half: f64,
    sigma: f64,
    floor: f64,
    total: f64,
}

impl LoweredGaussian {
    fn new(duration: f64) -> Self {
        let half = 0.5 * duration;
        let sigma = GAUSS_SIGMA_FRACTION * duration;
        let floor = (-half * half / (2.0 * sigma * sigma)).exp();
        let mut g = Self {
            half,
            sigma,
            floor,
            total: 1.0,
        };
        g.total = g.integral(duration);
        g
    }

    fn height(&self, t: f64) -> f64 {
        let u = t - self.half;
        (-u * u / (2.0 * self.sigma * self.sigma)).exp() - self.floor
    }

    fn slope(&self, t: f64) -> f64 {
        let u = t - self.half;
        -u / (self.sigma * self.sigma) * (-u * u / (2.0 * self.sigma * self.sigma)).exp()
    }

    /// Integral of `height` over `[0, t]`.
    fn integral(&self, t: f64) -> f64 {
        let scale = self.sigma * std::f64::consts::SQRT_2;
        let erf_part = libm::erf((t - self.half) / scale) + libm::erf(self.half / scale);
        self.sigma * (0.5 * PI).sqrt() * erf_part - self.floor * t
    }
}
