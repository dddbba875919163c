//! Sample the four motion profiles over the default surface-angle sweep.
//!
//!     cargo run --example profiles

use std::f64::consts::PI;

use flexsim::profile::{MotionProfile, ProfileShape};

fn main() -> flexsim::error::Result<()> {
    let (start, end, duration) = (2.0 * PI / 3.0, 5.0 * PI / 6.0, 5.0);
    println!(
        "{:>5} {:>10} {:>12} {:>12} {:>12}",
        "t", "shape", "value", "rate", "accel"
    );
    for shape in ProfileShape::ALL {
        let p = MotionProfile::new(shape, start, end, duration)?;
        for k in 0..=5 {
            let t = duration * k as f64 / 5.0;
            let s = p.evaluate(t)?;
            println!(
                "{t:>5.2} {:>10} {:>12.6} {:>12.6} {:>12.6}",
                shape.name(),
                s.value,
                s.rate,
                s.accel
            );
        }
    }
    Ok(())
}
