use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use flexsim::config::{Config, SurfaceMode};
use flexsim::profile::ProfileShape;
use flexsim::surface::{Point, RotatingParabola};

fn default_surface() -> RotatingParabola {
    Config::default()
        .surface(SurfaceMode::Rotating, ProfileShape::Sine)
        .unwrap()
}

#[test]
fn contact_point_beats_a_dense_sampling() {
    let surf = default_surface();
    let mut rng = StdRng::seed_from_u64(7);
    let samples = 10_000;
    for _ in 0..100 {
        let t = rng.random_range(0.0..=surf.duration());
        let q = Point::new(rng.random_range(-0.5..2.0), rng.random_range(-0.5..2.0));
        let c = surf.contact_point(q, t).unwrap();
        let found = (q - c.r).norm();
        let dense = (0..samples)
            .map(|i| {
                let s = -4.0 + 8.0 * i as f64 / (samples - 1) as f64;
                (q - surf.surface_point(s, t)).norm()
            })
            .fold(f64::INFINITY, f64::min);
        assert!(
            found <= dense + 1e-8,
            "t = {t}, q = {q:?}: {found} > {dense}"
        );
        assert_eq!(c.r, surf.surface_point(c.s, t));
    }
}

#[test]
fn offset_is_along_the_normal() {
    let surf = default_surface();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..100 {
        let t = rng.random_range(0.0..=surf.duration());
        let q = Point::new(rng.random_range(-0.5..2.0), rng.random_range(-0.5..2.0));
        let c = surf.contact_point(q, t).unwrap();
        let d = q - c.r;
        if d.norm() < 1e-9 {
            continue;
        }
        let tangent = Point::new(c.tangent_angle.cos(), c.tangent_angle.sin());
        assert!(
            (d.normalize().dot(&tangent)).abs() < 1e-9,
            "{}",
            d.normalize().dot(&tangent)
        );
        assert!((c.gap.abs() - d.norm()).abs() < 1e-12);
        assert!(
            c.tangent_angle > -std::f64::consts::FRAC_PI_2
                && c.tangent_angle <= std::f64::consts::FRAC_PI_2
        );
    }
}

#[test]
fn rotation_preserves_distances_to_the_pivot() {
    let surf = default_surface();
    for i in 0..50 {
        let s = -2.0 + 0.08 * i as f64;
        let d0 = (surf.surface_point(s, 0.0) - surf.pivot).norm();
        for k in 0..=10 {
            let t = surf.duration() * k as f64 / 10.0;
            assert!(((surf.surface_point(s, t) - surf.pivot).norm() - d0).abs() < 1e-12);
        }
    }
}

#[test]
fn surface_angle_sweeps_the_configured_range() {
    let cfg = Config::default();
    for shape in ProfileShape::ALL {
        let surf = cfg.surface(SurfaceMode::Rotating, shape).unwrap();
        assert!((surf.surface_angle(0.0) - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-12);
        assert!((surf.surface_angle(5.0) - 5.0 * std::f64::consts::PI / 6.0).abs() < 1e-12);
        let mut prev = surf.surface_angle(0.0);
        for k in 1..=100 {
            let a = surf.surface_angle(0.05 * k as f64);
            assert!(a >= prev - 1e-15, "{shape}");
            prev = a;
        }
    }
    let still = cfg
        .surface(SurfaceMode::Stationary, ProfileShape::Sine)
        .unwrap();
    assert_eq!(still.surface_angle(3.0), still.surface_angle(0.0));
}

#[test]
fn refit_recovers_a_rotated_line() {
    let phi: f64 = 0.2;
    let profile =
        flexsim::profile::MotionProfile::new(ProfileShape::Polynomial, 0.0, phi, 1.0).unwrap();
    let surf = RotatingParabola::new(0.0, 0.0, 1.0, Point::new(0.0, 1.0), profile, false).unwrap();
    let (a, b, c) = surf.coefficients_at(1.0, (-0.5, 0.5)).unwrap();
    assert!(
        a.abs() < 1e-9 && (b - phi.tan()).abs() < 1e-9 && (c - 1.0).abs() < 1e-9,
        "{a} {b} {c}"
    );
}
