//! Physical constants of the arm, contact spring and simulation grid.

use crate::error::{check_time, Error, Result};

/// Every constant the model needs.
///
/// Link 2 is a uniform slender beam, so its mass and hub-axis inertia are
/// derived from `l2` and `rho2` rather than stored. Hub inertias are stored as
/// multiples of the corresponding link inertia.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemParams {
    /// Rigid link length (m).
    pub l1: f64,
    /// Flexible link length (m).
    pub l2: f64,
    /// Rigid link mass (kg).
    pub m1: f64,
    /// Flexible link linear density (kg/m).
    pub rho2: f64,
    /// Tip mass at t = 0 (kg).
    pub m3_base: f64,
    /// Tip mass gained linearly over the motion (kg).
    pub m3_growth: f64,
    /// Rigid link inertia about joint 1 (kg m^2).
    pub i1: f64,
    pub ih1_factor: f64,
    pub ih2_factor: f64,
    /// Flexural rigidity E2*I2 (N m^2).
    pub ei: f64,
    /// Contact spring stiffness (N/m).
    pub ks: f64,
    /// Tip-mass radius of gyration (m).
    pub k_gyr: f64,
    /// Centroid offset of link 2 from joint 2 (m).
    pub xbar2: f64,
    /// Motion duration (s).
    pub duration: f64,
    pub n_modes: usize,
    pub n_quad: usize,
    /// Time step (s).
    pub dt: f64,
}

impl Default for SystemParams {
    fn default() -> Self {
        default_params()
    }
}

/// Parameter set of the reference study, with the unstated constants
/// (`rho2`, `ks`, `k_gyr`, `xbar2`) filled by their documented defaults.
pub fn default_params() -> SystemParams {
    let l2 = 0.75;
    SystemParams {
        l1: 0.5,
        l2,
        m1: 0.5,
        rho2: 1.0,
        m3_base: 0.15,
        m3_growth: 0.15,
        i1: 0.0834,
        ih1_factor: 10.0,
        ih2_factor: 10.0,
        ei: 2.4507,
        ks: 1000.0,
        k_gyr: 0.05,
        xbar2: l2 / 2.0,
        duration: 5.0,
        n_modes: 3,
        n_quad: 64,
        dt: 0.005,
    }
}

impl SystemParams {
    /// Mass of the flexible link, `l2 * rho2`.
    pub fn m2(&self) -> f64 {
        self.l2 * self.rho2
    }

    /// Inertia of the flexible link about joint 2, `l2^3 * rho2 / 3`.
    pub fn i2(&self) -> f64 {
        self.l2.powi(3) * self.rho2 / 3.0
    }

    pub fn ih1(&self) -> f64 {
        self.ih1_factor * self.i1
    }

    pub fn ih2(&self) -> f64 {
        self.ih2_factor * self.i2()
    }

    /// Tip payload mass, growing linearly from `m3_base` over the motion.
    pub fn tip_mass(&self, t: f64) -> Result<f64> {
        check_time(t, self.duration)?;
        Ok(self.tip_mass_unchecked(t))
    }

    /// Tip inertia about its own axis, `m3(t) * k_gyr^2`.
    pub fn tip_inertia(&self, t: f64) -> Result<f64> {
        Ok(self.tip_mass(t)? * self.k_gyr * self.k_gyr)
    }

    pub(crate) fn tip_mass_unchecked(&self, t: f64) -> f64 {
        self.m3_base + self.m3_growth * t / self.duration
    }

    pub(crate) fn tip_inertia_unchecked(&self, t: f64) -> f64 {
        self.tip_mass_unchecked(t) * self.k_gyr * self.k_gyr
    }

    /// Number of grid intervals, `floor(T / dt)`, tolerant of rounding in the
    /// division (5 / 0.005 gives exactly 1000 intervals).
    pub fn n_steps(&self) -> usize {
        let ratio = self.duration / self.dt;
        let nearest = ratio.round();
        if (ratio - nearest).abs() <= 1e-9 * nearest.max(1.0) {
            nearest as usize
        } else {
            ratio.floor() as usize
        }
    }

    /// Sample times `k * dt`, with the last sample pinned to `T` when the
    /// step divides the duration.
    pub fn time_grid(&self) -> Vec<f64> {
        let n = self.n_steps();
        let mut grid: Vec<f64> = (0..=n).map(|k| k as f64 * self.dt).collect();
        if (n as f64 * self.dt - self.duration).abs() <= 1e-9 * self.duration {
            grid[n] = self.duration;
        }
        grid
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("l1", self.l1),
            ("l2", self.l2),
            ("m1", self.m1),
            ("rho2", self.rho2),
            ("m3_base", self.m3_base),
            ("I1", self.i1),
            ("Ih1_factor", self.ih1_factor),
            ("Ih2_factor", self.ih2_factor),
            ("EI", self.ei),
            ("T", self.duration),
            ("dt", self.dt),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::invalid(
                    name,
                    format!("must be finite and > 0, got {value}"),
                ));
            }
        }
        if !(self.m3_growth.is_finite() && self.m3_growth >= 0.0) {
            return Err(Error::invalid("m3_growth", "must be finite and >= 0"));
        }
        // Ks = 0 is the free-motion limit used by the stiff-link checks.
        if !(self.ks.is_finite() && self.ks >= 0.0) {
            return Err(Error::invalid("Ks", "must be finite and >= 0"));
        }
        if !(self.k_gyr.is_finite() && self.k_gyr >= 0.0) {
            return Err(Error::invalid("K_gyr", "must be finite and >= 0"));
        }
        if !(self.xbar2 > 0.0 && self.xbar2 <= self.l2) {
            return Err(Error::invalid(
                "xbar2",
                format!("must lie in (0, l2 = {}], got {}", self.l2, self.xbar2),
            ));
        }
        if self.dt > self.duration {
            return Err(Error::invalid("dt", "must not exceed T"));
        }
        if self.n_modes == 0 {
            return Err(Error::invalid("n_modes", "must be at least 1"));
        }
        if self.n_quad < 2 {
            return Err(Error::invalid("n_quad", "must be at least 2"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        let p = default_params();
        assert_eq!(p.l1, 0.5);
        assert_eq!(p.l2, 0.75);
        assert_eq!(p.ei, 2.4507);
        assert_eq!(p.m2(), 0.75 * p.rho2);
        assert_eq!(p.i2(), 0.75f64.powi(3) * p.rho2 / 3.0);
        assert_eq!(p.ih1(), 10.0 * p.i1);
        assert_eq!(p.ih2(), 10.0 * p.i2());
        assert_eq!(p.xbar2, p.l2 / 2.0);
        p.validate().unwrap();
    }

    #[test]
    fn tip_mass_endpoints() {
        let p = default_params();
        assert_eq!(p.tip_mass(0.0).unwrap(), 0.15);
        assert!((p.tip_mass(5.0).unwrap() - 0.30).abs() < 1e-15);
        assert!((p.tip_mass(2.5).unwrap() - 0.225).abs() < 1e-15);
        assert!(matches!(p.tip_mass(5.1), Err(Error::Domain { .. })));
        assert!(matches!(p.tip_mass(-0.1), Err(Error::Domain { .. })));
    }

    #[test]
    fn tip_inertia_values() {
        let mut p = default_params();
        assert!((p.tip_inertia(0.0).unwrap() - 3.75e-4).abs() < 1e-15);
        assert!((p.tip_inertia(5.0).unwrap() - 7.5e-4).abs() < 1e-15);
        p.k_gyr = 0.0;
        assert_eq!(p.tip_inertia(3.0).unwrap(), 0.0);
    }

    #[test]
    fn grid_has_1001_samples_at_defaults() {
        let p = default_params();
        let g = p.time_grid();
        assert_eq!(g.len(), 1001);
        assert_eq!(g[0], 0.0);
        assert_eq!(*g.last().unwrap(), 5.0);
    }

    #[test]
    fn rejects_bad_values() {
        let mut p = default_params();
        p.ks = -1.0;
        assert!(p.validate().is_err());
        p.ks = 0.0;
        p.validate().unwrap();
        let mut p = default_params();
        p.xbar2 = 1.0;
        assert!(p.validate().is_err());
    }
}
