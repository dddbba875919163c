//! Lowest-order polynomial boundary functions absorbing the time-dependent
//! boundary conditions of the flexible link.

/// Cubic `c0 + c1 x + c2 x^2 + c3 x^3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cubic(pub [f64; 4]);

impl Cubic {
    pub fn eval(&self, x: f64) -> f64 {
        let [c0, c1, c2, c3] = self.0;
        ((c3 * x + c2) * x + c1) * x + c0
    }

    pub fn d1(&self, x: f64) -> f64 {
        let [_, c1, c2, c3] = self.0;
        (3.0 * c3 * x + 2.0 * c2) * x + c1
    }

    pub fn d2(&self, x: f64) -> f64 {
        let [_, _, c2, c3] = self.0;
        6.0 * c3 * x + 2.0 * c2
    }

    pub fn d3(&self) -> f64 {
        6.0 * self.0[3]
    }

    /// `int_0^l p(x) sin(k x) dx` by repeated integration by parts (exact for cubics).
    pub fn sine_moment(&self, k: f64, l: f64) -> f64 {
        let antideriv = |x: f64| {
            let (s, c) = (k * x).sin_cos();
            -self.eval(x) * c / k + self.d1(x) * s / k.powi(2) + self.d2(x) * c / k.powi(3)
                - self.d3() * s / k.powi(4)
        };
        antideriv(l) - antideriv(0.0)
    }
}

/// The three boundary functions `g`, `h`, `q` for a link of length `l2`.
///
/// * `g` carries the end displacement: `g(0) = 0`, `g(l2) = l2`, `g'' = 0`.
/// * `h` carries the root curvature: zero at both ends, `h''(0) = 1`, `h''(l2) = 0`.
/// * `q` carries the tip curvature: zero at both ends, `q''(0) = 0`, `q''(l2) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeFunctions {
    pub g: Cubic,
    pub h: Cubic,
    pub q: Cubic,
}

pub fn shape_functions(l2: f64) -> ShapeFunctions {
    assert!(l2 > 0.0, "link length must be positive");
    ShapeFunctions {
        g: Cubic([0.0, 1.0, 0.0, 0.0]),
        h: Cubic([0.0, -l2 / 3.0, 0.5, -1.0 / (6.0 * l2)]),
        q: Cubic([0.0, -l2 / 6.0, 0.0, 1.0 / (6.0 * l2)]),
    }
}
