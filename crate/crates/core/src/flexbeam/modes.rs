//! Pinned-pinned modal basis of the flexible link and the projections of the
//! boundary functions onto it.

use std::f64::consts::PI;

use super::shape::{shape_functions, ShapeFunctions};
use crate::error::{Error, Result};
use crate::params::SystemParams;
use crate::quadrature::GaussLegendre;

/// Mass-normalised eigenfunctions `sqrt(2 / (rho2 l2)) sin(n pi x / l2)` and
/// their frequencies. Mode indices are 1-based throughout the public API.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalBasis {
    pub n_modes: usize,
    pub l2: f64,
    pub rho2: f64,
    pub ei: f64,
    pub omega: Vec<f64>,
}

impl ModalBasis {
    pub fn new(n_modes: usize, l2: f64, rho2: f64, ei: f64) -> Result<Self> {
        if n_modes == 0 {
            return Err(Error::invalid("n_modes", "must be at least 1"));
        }
        for (name, v) in [("l2", l2), ("rho2", rho2), ("EI", ei)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(name, "must be finite and > 0"));
            }
        }
        let omega = (1..=n_modes)
            .map(|n| natural_frequency_of(n, l2, rho2, ei))
            .collect();
        Ok(Self {
            n_modes,
            l2,
            rho2,
            ei,
            omega,
        })
    }

    pub fn from_params(params: &SystemParams) -> Result<Self> {
        Self::new(params.n_modes, params.l2, params.rho2, params.ei)
    }

    /// Normalisation factor `sqrt(2 / (rho2 l2))`.
    pub fn amplitude(&self) -> f64 {
        (2.0 / (self.rho2 * self.l2)).sqrt()
    }

    /// Wavenumber `n pi / l2`.
    pub fn wavenumber(&self, n: usize) -> f64 {
        n as f64 * PI / self.l2
    }

    pub fn natural_frequency(&self, n: usize) -> f64 {
        natural_frequency_of(n, self.l2, self.rho2, self.ei)
    }

    pub fn eigenfunction(&self, n: usize, x: f64) -> Result<f64> {
        self.check(n, x)?;
        Ok(self.v(n, x))
    }

    /// Spatial slope `v_n'(x)`.
    pub fn eigen_slope(&self, n: usize, x: f64) -> Result<f64> {
        self.check(n, x)?;
        Ok(self.v_slope(n, x))
    }

    pub(crate) fn v(&self, n: usize, x: f64) -> f64 {
        self.amplitude() * (self.wavenumber(n) * x).sin()
    }

    pub(crate) fn v_slope(&self, n: usize, x: f64) -> f64 {
        let k = self.wavenumber(n);
        self.amplitude() * k * (k * x).cos()
    }

    pub(crate) fn v_curvature(&self, n: usize, x: f64) -> f64 {
        let k = self.wavenumber(n);
        -self.amplitude() * k * k * (k * x).sin()
    }

    /// `int_0^l2 v_n dx`, zero for even modes.
    pub fn integral(&self, n: usize) -> f64 {
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        self.amplitude() * (1.0 - sign) / self.wavenumber(n)
    }

    fn check(&self, n: usize, x: f64) -> Result<()> {
        if n == 0 || n > self.n_modes {
            return Err(Error::Domain {
                what: "mode index",
                value: n as f64,
                lo: 1.0,
                hi: self.n_modes as f64,
            });
        }
        if !(0.0..=self.l2).contains(&x) {
            return Err(Error::Domain {
                what: "x",
                value: x,
                lo: 0.0,
                hi: self.l2,
            });
        }
        Ok(())
    }
}

/// `omega_n = (n pi / l2)^2 sqrt(EI / rho2)`.
pub fn natural_frequency_of(n: usize, l2: f64, rho2: f64, ei: f64) -> f64 {
    let k = n as f64 * PI / l2;
    k * k * (ei / rho2).sqrt()
}

/// Projections of the boundary functions on each mode.
///
/// `g_mass[n-1] = int v_n rho2 g dx` (likewise `h_mass`, `q_mass`) are the
/// ones that drive the modal coordinates. The "stiffness" projections
/// `int v_n g''`, `int v_n h'''`, `int v_n q'''` never enter the modal forcing
/// (the boundary functions are cubic, so their fourth derivatives vanish) and
/// are kept for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalConstants {
    pub g_mass: Vec<f64>,
    pub h_mass: Vec<f64>,
    pub q_mass: Vec<f64>,
    pub g_stiff: Vec<f64>,
    pub h_stiff: Vec<f64>,
    pub q_stiff: Vec<f64>,
}

impl ModalConstants {
    /// Closed-form constants.
    pub fn closed_form(basis: &ModalBasis) -> Self {
        let shapes = shape_functions(basis.l2);
        let mass = |p: &super::shape::Cubic| -> Vec<f64> {
            (1..=basis.n_modes)
                .map(|n| {
                    basis.rho2 * basis.amplitude() * p.sine_moment(basis.wavenumber(n), basis.l2)
                })
                .collect()
        };
        let stiff = |constant_derivative: f64| -> Vec<f64> {
            (1..=basis.n_modes)
                .map(|n| constant_derivative * basis.integral(n))
                .collect()
        };
        Self {
            g_mass: mass(&shapes.g),
            h_mass: mass(&shapes.h),
            q_mass: mass(&shapes.q),
            g_stiff: vec![0.0; basis.n_modes],
            h_stiff: stiff(shapes.h.d3()),
            q_stiff: stiff(shapes.q.d3()),
        }
    }

    /// The same constants by `n_quad`-point Gauss-Legendre quadrature.
    pub fn by_quadrature(basis: &ModalBasis, n_quad: usize) -> Self {
        let shapes: ShapeFunctions = shape_functions(basis.l2);
        let rule = GaussLegendre::new(n_quad);
        let project = |f: &dyn Fn(f64) -> f64| -> Vec<f64> {
            (1..=basis.n_modes)
                .map(|n| rule.integrate(0.0, basis.l2, |x| basis.v(n, x) * f(x)))
                .collect()
        };
        let rho = basis.rho2;
        Self {
            g_mass: project(&|x| rho * shapes.g.eval(x)),
            h_mass: project(&|x| rho * shapes.h.eval(x)),
            q_mass: project(&|x| rho * shapes.q.eval(x)),
            g_stiff: project(&|x| shapes.g.d2(x)),
            h_stiff: project(&|_| shapes.h.d3()),
            q_stiff: project(&|_| shapes.q.d3()),
        }
    }
}

pub fn modal_constants(basis: &ModalBasis) -> ModalConstants {
    ModalConstants::closed_form(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn basis(n: usize) -> ModalBasis {
        ModalBasis::new(n, 0.75, 1.0, 2.4507).unwrap()
    }

    #[test]
    fn eigenfunction_values() {
        let b = basis(3);
        for n in 1..=3 {
            assert_eq!(b.eigenfunction(n, 0.0).unwrap(), 0.0);
        }
        assert!((b.eigenfunction(1, 0.375).unwrap() - (2.0f64 / 0.75).sqrt()).abs() < 1e-14);
        assert!((b.eigenfunction(1, 0.375).unwrap() - 1.63299).abs() < 1e-5);
        assert!(b.eigenfunction(2, 0.375).unwrap().abs() < 1e-15);
        assert!(b.eigenfunction(0, 0.1).is_err());
        assert!(b.eigenfunction(4, 0.1).is_err());
        assert!(b.eigenfunction(1, 0.8).is_err());
    }

    #[test]
    fn frequencies() {
        let b = basis(3);
        assert!((b.omega[0] - 27.468).abs() < 1e-3);
        assert!((b.omega[1] - 4.0 * b.omega[0]).abs() < 1e-12);
        assert!(b.omega.windows(2).all(|w| w[0] < w[1]));
        let stiffer = ModalBasis::new(3, 0.75, 1.0, 2.0 * 2.4507).unwrap();
        assert!((stiffer.omega[0] / b.omega[0] - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn first_mode_displacement_projection() {
        let c = modal_constants(&basis(3));
        let closed = (2.0f64 / 0.75).sqrt() * 0.75 * 0.75 / PI;
        assert!((c.g_mass[0] - closed).abs() < 1e-12);
        assert!((c.g_mass[0] - 0.29239).abs() < 1e-5);
        assert!(c.g_stiff.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn quadrature_agrees_with_closed_form() {
        let b = basis(5);
        let closed = ModalConstants::closed_form(&b);
        let quad = ModalConstants::by_quadrature(&b, 64);
        let pairs = [
            (&closed.g_mass, &quad.g_mass),
            (&closed.h_mass, &quad.h_mass),
            (&closed.q_mass, &quad.q_mass),
            (&closed.g_stiff, &quad.g_stiff),
            (&closed.h_stiff, &quad.h_stiff),
            (&closed.q_stiff, &quad.q_stiff),
        ];
        for (a, q) in pairs {
            for (x, y) in a.iter().zip(q.iter()) {
                assert!((x - y).abs() < 1e-9, "{x} vs {y}");
            }
        }
    }

    #[test]
    fn projection_sign_patterns() {
        // Brute-force quadrature over n = 1..4: the tip-curvature projection
        // alternates in sign; the root-curvature one is negative for every mode.
        let q = ModalConstants::by_quadrature(&basis(4), 64);
        for n in 0..3 {
            assert!(q.q_mass[n] * q.q_mass[n + 1] < 0.0);
            assert!(q.g_mass[n] * q.g_mass[n + 1] < 0.0);
        }
        assert!(q.h_mass.iter().all(|&h| h < 0.0));
    }

    #[test]
    fn mode_integrals_vanish_for_even_modes() {
        let b = basis(4);
        let rule = GaussLegendre::new(64);
        for n in 1..=4 {
            let quad = rule.integrate(0.0, 0.75, |x| b.v(n, x));
            assert!((quad - b.integral(n)).abs() < 1e-13);
        }
        assert_eq!(b.integral(2), 0.0);
        assert_eq!(b.integral(4), 0.0);
    }
}
