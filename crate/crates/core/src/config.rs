//! Flat `key = value` configuration files.
//!
//! One assignment per line, `#` starts a comment, angles are radians. Numeric
//! values may be written as multiples of pi (`pi/6`, `5*pi/6`, `2pi/3`).
//! Every key is optional; unknown or repeated keys are errors.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::dynamics::{tip_position, JointProfiles};
use crate::error::{Error, Result};
use crate::params::{default_params, SystemParams};
use crate::profile::{MotionProfile, ProfileShape};
use crate::surface::{Point, RotatingParabola};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SurfaceMode {
    Stationary,
    #[default]
    Rotating,
}

impl SurfaceMode {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceMode::Stationary => "stationary",
            SurfaceMode::Rotating => "rotating",
        }
    }
}

impl FromStr for SurfaceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "stationary" => Ok(SurfaceMode::Stationary),
            "rotating" => Ok(SurfaceMode::Rotating),
            other => Err(Error::invalid(
                "surface_mode",
                format!("expected stationary|rotating, got `{other}`"),
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Offset {
    /// Chosen so the surface passes through the initial end-effector position.
    #[default]
    Auto,
    Value(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Pivot {
    /// Base-parabola point nearest the initial end-effector position.
    #[default]
    Auto,
    At(Point),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceConfig {
    pub a0: f64,
    pub b0: f64,
    pub c0: Offset,
    pub pivot: Pivot,
    pub profile: ProfileShape,
    pub mode: SurfaceMode,
    pub alpha_start: f64,
    pub alpha_end: f64,
}

impl Default for SurfaceConfig {
    fn default() -> Self {
        Self {
            a0: 0.5,
            b0: 0.0,
            c0: Offset::Auto,
            pivot: Pivot::Auto,
            profile: ProfileShape::Sine,
            mode: SurfaceMode::Rotating,
            alpha_start: 2.0 * PI / 3.0,
            alpha_end: 5.0 * PI / 6.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub params: SystemParams,
    pub theta1_start: f64,
    pub theta1_end: f64,
    pub theta2_start: f64,
    pub theta2_end: f64,
    pub surface: SurfaceConfig,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            params: default_params(),
            theta1_start: PI / 6.0,
            theta1_end: PI / 3.0,
            theta2_start: PI / 3.0,
            theta2_end: PI / 2.0,
            surface: SurfaceConfig::default(),
        }
    }
}

const KEYS: &[&str] = &[
    "l1",
    "l2",
    "m1",
    "rho2",
    "m3_base",
    "m3_growth",
    "I1",
    "Ih1_factor",
    "Ih2_factor",
    "EI",
    "Ks",
    "K_gyr",
    "xbar2",
    "T",
    "dt",
    "n_modes",
    "n_quad",
    "theta1_start",
    "theta1_end",
    "theta2_start",
    "theta2_end",
    "alpha_start",
    "alpha_end",
    "surface_a0",
    "surface_b0",
    "surface_c0_mode",
    "surface_c0",
    "pivot_mode",
    "pivot_x",
    "pivot_y",
    "surface_profile",
    "surface_mode",
];

impl Config {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        let mut seen: Vec<&str> = Vec::new();
        let mut xbar2_set = false;
        let mut c0_mode: Option<(usize, String)> = None;
        let mut c0_value: Option<f64> = None;
        let mut pivot_mode: Option<(usize, String)> = None;
        let (mut pivot_x, mut pivot_y) = (None, None);

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: String| Error::Config {
                line: line_no,
                reason,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            let key = *KEYS
                .iter()
                .find(|k| **k == key)
                .ok_or_else(|| err(format!("unknown key `{key}`")))?;
            if seen.contains(&key) {
                return Err(err(format!("duplicate key `{key}`")));
            }
            seen.push(key);

            let num = || parse_number(value).map_err(|r| err(format!("{key}: {r}")));
            let count = || {
                value.parse::<usize>().map_err(|_| {
                    err(format!(
                        "{key}: expected a non-negative integer, got `{value}`"
                    ))
                })
            };
            let p = &mut cfg.params;
            match key {
                "l1" => p.l1 = num()?,
                "l2" => p.l2 = num()?,
                "m1" => p.m1 = num()?,
                "rho2" => p.rho2 = num()?,
                "m3_base" => p.m3_base = num()?,
                "m3_growth" => p.m3_growth = num()?,
                "I1" => p.i1 = num()?,
                "Ih1_factor" => p.ih1_factor = num()?,
                "Ih2_factor" => p.ih2_factor = num()?,
                "EI" => p.ei = num()?,
                "Ks" => p.ks = num()?,
                "K_gyr" => p.k_gyr = num()?,
                "xbar2" => {
                    p.xbar2 = num()?;
                    xbar2_set = true;
                }
                "T" => p.duration = num()?,
                "dt" => p.dt = num()?,
                "n_modes" => p.n_modes = count()?,
                "n_quad" => p.n_quad = count()?,
                "theta1_start" => cfg.theta1_start = num()?,
                "theta1_end" => cfg.theta1_end = num()?,
                "theta2_start" => cfg.theta2_start = num()?,
                "theta2_end" => cfg.theta2_end = num()?,
                "alpha_start" => cfg.surface.alpha_start = num()?,
                "alpha_end" => cfg.surface.alpha_end = num()?,
                "surface_a0" => cfg.surface.a0 = num()?,
                "surface_b0" => cfg.surface.b0 = num()?,
                "surface_c0_mode" => c0_mode = Some((line_no, value.to_string())),
                "surface_c0" => c0_value = Some(num()?),
                "pivot_mode" => pivot_mode = Some((line_no, value.to_string())),
                "pivot_x" => pivot_x = Some(num()?),
                "pivot_y" => pivot_y = Some(num()?),
                "surface_profile" => {
                    cfg.surface.profile = value.parse().map_err(|e: Error| err(e.to_string()))?
                }
                "surface_mode" => {
                    cfg.surface.mode = value.parse().map_err(|e: Error| err(e.to_string()))?
                }
                _ => unreachable!("key list and match arms out of sync"),
            }
        }

        if !xbar2_set {
            cfg.params.xbar2 = cfg.params.l2 / 2.0;
        }
        cfg.surface.c0 = match (c0_mode, c0_value) {
            (None, None) => Offset::Auto,
            (None, Some(v)) => Offset::Value(v),
            (Some((line, mode)), v) => match (mode.as_str(), v) {
                ("auto", _) => Offset::Auto,
                ("value", Some(v)) => Offset::Value(v),
                ("value", None) => {
                    return Err(Error::Config {
                        line,
                        reason: "surface_c0_mode = value needs surface_c0".into(),
                    })
                }
                (other, _) => {
                    return Err(Error::Config {
                        line,
                        reason: format!("surface_c0_mode: expected auto|value, got `{other}`"),
                    })
                }
            },
        };
        cfg.surface.pivot = match pivot_mode {
            None if pivot_x.is_none() && pivot_y.is_none() => Pivot::Auto,
            Some((_, ref m)) if m == "auto" => Pivot::Auto,
            Some((_, ref m)) if m == "xy" => match (pivot_x, pivot_y) {
                (Some(x), Some(y)) => Pivot::At(Point::new(x, y)),
                _ => {
                    return Err(Error::Config {
                        line: pivot_mode.map(|(l, _)| l).unwrap_or(0),
                        reason: "pivot_mode = xy needs pivot_x and pivot_y".into(),
                    })
                }
            },
            None => match (pivot_x, pivot_y) {
                (Some(x), Some(y)) => Pivot::At(Point::new(x, y)),
                _ => {
                    return Err(Error::Config {
                        line: 0,
                        reason: "pivot_x and pivot_y must be given together".into(),
                    })
                }
            },
            Some((line, m)) => {
                return Err(Error::Config {
                    line,
                    reason: format!("pivot_mode: expected auto|xy, got `{m}`"),
                })
            }
        };
        Ok(cfg)
    }

    /// Render as a config file that parses back to `self`.
    pub fn render(&self) -> String {
        let p = &self.params;
        let s = &self.surface;
        let mut out = String::new();
        let mut put = |k: &str, v: String| {
            let _ = writeln!(out, "{k} = {v}");
        };
        put("l1", p.l1.to_string());
        put("l2", p.l2.to_string());
        put("m1", p.m1.to_string());
        put("rho2", p.rho2.to_string());
        put("m3_base", p.m3_base.to_string());
        put("m3_growth", p.m3_growth.to_string());
        put("I1", p.i1.to_string());
        put("Ih1_factor", p.ih1_factor.to_string());
        put("Ih2_factor", p.ih2_factor.to_string());
        put("EI", p.ei.to_string());
        put("Ks", p.ks.to_string());
        put("K_gyr", p.k_gyr.to_string());
        put("xbar2", p.xbar2.to_string());
        put("T", p.duration.to_string());
        put("dt", p.dt.to_string());
        put("n_modes", p.n_modes.to_string());
        put("n_quad", p.n_quad.to_string());
        put("theta1_start", self.theta1_start.to_string());
        put("theta1_end", self.theta1_end.to_string());
        put("theta2_start", self.theta2_start.to_string());
        put("theta2_end", self.theta2_end.to_string());
        put("alpha_start", s.alpha_start.to_string());
        put("alpha_end", s.alpha_end.to_string());
        put("surface_a0", s.a0.to_string());
        put("surface_b0", s.b0.to_string());
        match s.c0 {
            Offset::Auto => put("surface_c0_mode", "auto".into()),
            Offset::Value(v) => {
                put("surface_c0_mode", "value".into());
                put("surface_c0", v.to_string());
            }
        }
        match s.pivot {
            Pivot::Auto => put("pivot_mode", "auto".into()),
            Pivot::At(pt) => {
                put("pivot_mode", "xy".into());
                put("pivot_x", pt.x.to_string());
                put("pivot_y", pt.y.to_string());
            }
        }
        put("surface_profile", s.profile.name().into());
        put("surface_mode", s.mode.name().into());
        out
    }

    pub fn joint_profiles(&self, shape: ProfileShape) -> Result<JointProfiles> {
        let t = self.params.duration;
        Ok(JointProfiles {
            theta1: MotionProfile::new(shape, self.theta1_start, self.theta1_end, t)?,
            theta2: MotionProfile::new(shape, self.theta2_start, self.theta2_end, t)?,
        })
    }

    pub fn initial_tip(&self) -> Point {
        tip_position(&self.params, self.theta1_start, self.theta2_start)
    }

    /// Build the contact surface, resolving the automatic offset and pivot
    /// against the initial end-effector position.
    pub fn surface(&self, mode: SurfaceMode, profile: ProfileShape) -> Result<RotatingParabola> {
        let s = &self.surface;
        let tip = self.initial_tip();
        let c0 = match s.c0 {
            Offset::Auto => tip.y - (s.a0 * tip.x + s.b0) * tip.x,
            Offset::Value(v) => v,
        };
        let alpha = MotionProfile::new(profile, s.alpha_start, s.alpha_end, self.params.duration)?;
        let stationary = mode == SurfaceMode::Stationary;
        let mut surf = RotatingParabola::new(s.a0, s.b0, c0, Point::zeros(), alpha, stationary)?;
        surf.pivot = match s.pivot {
            Pivot::At(p) => p,
            // At t = 0 no rotation has happened, so the nearest point on the
            // world surface is the nearest base point.
            Pivot::Auto => surf.contact_point(tip, 0.0)?.r,
        };
        Ok(surf)
    }

    /// Surface using the configured mode and profile.
    pub fn default_surface(&self) -> Result<RotatingParabola> {
        self.surface(self.surface.mode, self.surface.profile)
    }

    /// Check parameter and surface invariants without simulating. Returns
    /// human-readable notes about what was checked.
    pub fn validate(&self) -> Result<Vec<String>> {
        self.params.validate()?;
        let mut notes = vec![format!(
            "params ok: m2 = {} kg, I2 = {} kg m^2, grid = {} samples",
            self.params.m2(),
            self.params.i2(),
            self.params.n_steps() + 1
        )];
        for shape in ProfileShape::JOINT {
            self.joint_profiles(shape)?;
        }
        let surf = self.default_surface()?;
        let tip = self.initial_tip();
        let contact = surf.contact_point(tip, 0.0)?;
        notes.push(format!(
            "surface ok: y = {} x^2 + {} x + {}, pivot ({}, {}), initial gap {:e} m",
            surf.a0, surf.b0, surf.c0, surf.pivot.x, surf.pivot.y, contact.gap
        ));
        for t in [0.0, 0.5 * self.params.duration, self.params.duration] {
            let r = surf.surface_point(contact.s, t);
            let d0 = (surf.surface_point(contact.s, 0.0) - surf.pivot).norm();
            if ((r - surf.pivot).norm() - d0).abs() > 1e-12 {
                return Err(Error::invalid("surface", "rotation is not rigid"));
            }
        }
        notes.push(format!(
            "surface angle {} -> {} rad ({})",
            surf.surface_angle(0.0),
            surf.surface_angle(self.params.duration),
            if surf.stationary {
                "stationary"
            } else {
                surf.alpha_profile.shape.name()
            }
        ));
        Ok(notes)
    }
}

/// Parse a float, optionally written as a rational multiple of pi.
fn parse_number(text: &str) -> std::result::Result<f64, String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Ok(v) = compact.parse::<f64>() {
        return Ok(v);
    }
    let lower = compact.to_ascii_lowercase();
    let bad = || format!("expected a number, got `{text}`");
    let (num, den) = match lower.split_once('/') {
        Some((n, d)) => (n, Some(d.parse::<f64>().map_err(|_| bad())?)),
        None => (lower.as_str(), None),
    };
    let coeff = num.strip_suffix("pi").ok_or_else(bad)?;
    let coeff = coeff.strip_suffix('*').unwrap_or(coeff);
    let factor = match coeff {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(factor * PI / den.unwrap_or(1.0))
}
