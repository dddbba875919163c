//! Follow the contact point of a fixed query as the default surface rotates,
//! and show the refitted quadratic coefficients.
//!
//!     cargo run --example contact_surface

use flexsim::config::{Config, SurfaceMode};
use flexsim::profile::ProfileShape;

fn main() -> flexsim::error::Result<()> {
    let cfg = Config::default();
    let surf = cfg.surface(SurfaceMode::Rotating, ProfileShape::Sine)?;
    let tip = cfg.initial_tip();
    let query = tip + flexsim::surface::Point::new(0.05, 0.1);
    println!(
        "pivot = ({:.4}, {:.4}), query = ({:.4}, {:.4})",
        surf.pivot.x, surf.pivot.y, query.x, query.y
    );

    for k in 0..=5 {
        let t = k as f64;
        let c = surf.contact_point(query, t)?;
        let window = (c.r.x - 0.2, c.r.x + 0.2);
        let fit = surf
            .coefficients_at(t, window)
            .map(|(a, b, c)| format!("y = {a:.4} x^2 {b:+.4} x {c:+.4}"))
            .unwrap_or_else(|e| e.to_string());
        println!(
            "t = {t:.1}  alpha = {:.4}  r = ({:.5}, {:.5})  gap = {:+.5}  tangent = {:.4}  {fit}",
            surf.surface_angle(t),
            c.r.x,
            c.r.y,
            c.gap,
            c.tangent_angle
        );
    }
    Ok(())
}
