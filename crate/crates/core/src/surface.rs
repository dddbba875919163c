//! Parabolic contact surface under rigid rotation about a pivot.
//!
//! The surface is held parametrically: a base point `p0(s) = (s, a0 s^2 + b0 s + c0)`
//! is rotated by `alpha(t) - alpha(0)` about `pivot`. All contact geometry is
//! computed in the base frame, where the surface is an ordinary graph.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{DMatrix, DVector, Rotation2, Vector2};

use crate::error::{Error, Result};
use crate::profile::MotionProfile;

pub type Point = Vector2<f64>;

/// Seeds used to bracket the closest point before Newton refinement.
const CONTACT_SEEDS: usize = 64;
const CONTACT_MAX_ITER: usize = 100;
/// Samples used by the least-squares coefficient refit.
const REFIT_SAMPLES: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub struct RotatingParabola {
    pub a0: f64,
    pub b0: f64,
    pub c0: f64,
    pub pivot: Point,
    pub alpha_profile: MotionProfile,
    pub stationary: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactPoint {
    pub r: Point,
    /// Base-frame parameter of `r`.
    pub s: f64,
    /// Angle of the surface tangent at `r` with the horizontal, in (-pi/2, pi/2].
    pub tangent_angle: f64,
    /// Distance from `r` to the query, positive on the convex side's normal
    /// (above the base graph), negative below it.
    pub gap: f64,
}

impl RotatingParabola {
    pub fn new(
        a0: f64,
        b0: f64,
        c0: f64,
        pivot: Point,
        alpha_profile: MotionProfile,
        stationary: bool,
    ) -> Result<Self> {
        for (name, v) in [("surface_a0", a0), ("surface_b0", b0), ("surface_c0", c0)] {
            if !v.is_finite() {
                return Err(Error::invalid(name, "must be finite"));
            }
        }
        if !(pivot.x.is_finite() && pivot.y.is_finite()) {
            return Err(Error::invalid("pivot", "must be finite"));
        }
        Ok(Self {
            a0,
            b0,
            c0,
            pivot,
            alpha_profile,
            stationary,
        })
    }

    pub fn duration(&self) -> f64 {
        self.alpha_profile.duration
    }

    /// Surface angle with the horizontal; frozen at its initial value when
    /// the surface is stationary.
    pub fn surface_angle(&self, t: f64) -> f64 {
        if self.stationary {
            self.alpha_profile.start_value
        } else {
            self.alpha_profile.sample(self.clamp_time(t)).value
        }
    }

    /// Rigid rotation applied to the base parabola at time `t`.
    pub fn rotation_angle(&self, t: f64) -> f64 {
        if self.stationary {
            0.0
        } else {
            self.surface_angle(t) - self.alpha_profile.start_value
        }
    }

    pub fn base_height(&self, s: f64) -> f64 {
        (self.a0 * s + self.b0) * s + self.c0
    }

    pub fn base_slope(&self, s: f64) -> f64 {
        2.0 * self.a0 * s + self.b0
    }

    pub fn base_point(&self, s: f64) -> Point {
        Point::new(s, self.base_height(s))
    }

    pub fn surface_point(&self, s: f64, t: f64) -> Point {
        self.to_world(self.base_point(s), self.rotation_angle(t))
    }

    /// Least-squares `y = a x^2 + b x + c` through the rotated surface over
    /// the base-parameter window `[lo, hi]`. For reporting only; the dynamics
    /// always use the exact parametric surface.
    pub fn coefficients_at(&self, t: f64, window: (f64, f64)) -> Result<(f64, f64, f64)> {
        let (lo, hi) = window;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::invalid(
                "window",
                format!("degenerate interval [{lo}, {hi}]"),
            ));
        }
        let phi = self.rotation_angle(t);
        // x-component of the rotated tangent is affine in s; the window is a
        // graph iff it keeps one strict sign over [lo, hi].
        let tx = |s: f64| phi.cos() - self.base_slope(s) * phi.sin();
        let (tlo, thi) = (tx(lo), tx(hi));
        if tlo * thi <= 0.0 || tlo.abs() < 1e-12 || thi.abs() < 1e-12 {
            return Err(Error::NotAGraph { lo, hi });
        }
        let pts: Vec<Point> = (0..REFIT_SAMPLES)
            .map(|i| {
                let s = lo + (hi - lo) * i as f64 / (REFIT_SAMPLES - 1) as f64;
                self.surface_point(s, t)
            })
            .collect();
        // Fit in a centred, scaled abscissa u = (x - m) / h for conditioning.
        let (xmin, xmax) = pts
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| {
                (a.min(p.x), b.max(p.x))
            });
        let m = 0.5 * (xmin + xmax);
        let h = 0.5 * (xmax - xmin);
        let design = DMatrix::from_fn(REFIT_SAMPLES, 3, |i, j| {
            let u = (pts[i].x - m) / h;
            u.powi(2 - j as i32)
        });
        let rhs = DVector::from_iterator(REFIT_SAMPLES, pts.iter().map(|p| p.y));
        let sol = design
            .svd(true, true)
            .solve(&rhs, 1e-14)
            .map_err(|_| Error::NotAGraph { lo, hi })?;
        let (au, bu, cu) = (sol[0], sol[1], sol[2]);
        // Expand au*((x-m)/h)^2 + bu*(x-m)/h + cu back into powers of x.
        let a = au / (h * h);
        let b = bu / h - 2.0 * au * m / (h * h);
        let c = au * m * m / (h * h) - bu * m / h + cu;
        Ok((a, b, c))
    }

    /// Nearest surface point to `query` at time `t`.
    pub fn contact_point(&self, query: Point, t: f64) -> Result<ContactPoint> {
        if !(query.x.is_finite() && query.y.is_finite()) {
            return Err(Error::NoConvergence {
                x: query.x,
                y: query.y,
                t,
            });
        }
        let phi = self.rotation_angle(t);
        let q = self.to_base(query, phi);
        let s = self.closest_parameter(q).ok_or(Error::NoConvergence {
            x: query.x,
            y: query.y,
            t,
        })?;
        let base = self.base_point(s);
        let slope = self.base_slope(s);
        let normal = Vector2::new(-slope, 1.0);
        let diff = q - base;
        let dist = diff.norm();
        let gap = if diff.dot(&normal) < 0.0 { -dist } else { dist };
        Ok(ContactPoint {
            r: self.to_world(base, phi),
            s,
            tangent_angle: wrap_half_turn(slope.atan() + phi),
            gap,
        })
    }

    fn clamp_time(&self, t: f64) -> f64 {
        t.clamp(0.0, self.alpha_profile.duration)
    }

    fn to_world(&self, p: Point, phi: f64) -> Point {
        if phi == 0.0 {
            return p;
        }
        Rotation2::new(phi) * (p - self.pivot) + self.pivot
    }

    fn to_base(&self, p: Point, phi: f64) -> Point {
        if phi == 0.0 {
            return p;
        }
        Rotation2::new(-phi) * (p - self.pivot) + self.pivot
    }

    /// Half squared distance from `p0(s)` to `q` and its first two derivatives.
    fn distance_terms(&self, q: Point, s: f64) -> (f64, f64, f64) {
        let dx = s - q.x;
        let dy = self.base_height(s) - q.y;
        let slope = self.base_slope(s);
        (
            0.5 * (dx * dx + dy * dy),
            dx + dy * slope,
            1.0 + slope * slope + 2.0 * self.a0 * dy,
        )
    }

    /// Global minimiser of the distance from the base parabola to `q`.
    ///
    /// Any minimiser satisfies `|s - q.x| <= |p0(s) - q| <= |p0(q.x) - q|`,
    /// so seeding that interval cannot miss the global minimum.
    fn closest_parameter(&self, q: Point) -> Option<f64> {
        let radius = (self.base_height(q.x) - q.y).abs();
        if radius == 0.0 {
            return Some(q.x);
        }
        let lo = q.x - radius;
        let step = 2.0 * radius / (CONTACT_SEEDS - 1) as f64;
        let seeds: Vec<f64> = (0..CONTACT_SEEDS).map(|i| lo + step * i as f64).collect();
        let grads: Vec<f64> = seeds.iter().map(|&s| self.distance_terms(q, s).1).collect();

        let mut best: Option<(f64, f64)> = None;
        let mut consider = |s: f64| {
            let d = self.distance_terms(q, s).0;
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((s, d));
            }
        };
        consider(seeds[0]);
        consider(seeds[CONTACT_SEEDS - 1]);
        for i in 0..CONTACT_SEEDS - 1 {
            let (g0, g1) = (grads[i], grads[i + 1]);
            if g0 == 0.0 {
                consider(seeds[i]);
            }
            if g0 < 0.0 && g1 >= 0.0 {
                consider(self.refine(q, seeds[i], seeds[i + 1])?);
            }
        }
        best.map(|(s, _)| s)
    }

    /// Safeguarded Newton on the distance gradient inside `[lo, hi]`, where
    /// the gradient goes from negative to nonnegative.
    fn refine(&self, q: Point, mut lo: f64, mut hi: f64) -> Option<f64> {
        let mut s = 0.5 * (lo + hi);
        for _ in 0..CONTACT_MAX_ITER {
            let (_, g, h) = self.distance_terms(q, s);
            if g == 0.0 {
                return Some(s);
            }
            if g < 0.0 {
                lo = s;
            } else {
                hi = s;
            }
            let newton = s - g / h;
            let next = if h > 0.0 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if (next - s).abs() <= 1e-15 * (1.0 + s.abs()) || hi - lo <= 1e-15 * (1.0 + s.abs()) {
                return Some(next);
            }
            s = next;
        }
        None
    }
}

/// Map an angle into (-pi/2, pi/2]; a tangent line has no direction.
fn wrap_half_turn(angle: f64) -> f64 {
    let mut a = angle.rem_euclid(PI);
    if a > FRAC_PI_2 {
        a -= PI;
    }
    a
}
