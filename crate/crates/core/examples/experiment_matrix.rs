//! All fifteen joint-profile / surface-profile runs with the ranking report.
//!
//!     cargo run --release --example experiment_matrix -- [out-dir]

use std::path::PathBuf;
use std::time::Instant;

use flexsim::config::Config;
use flexsim::harness::run_matrix;

fn main() -> flexsim::error::Result<()> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "out/matrix".into()),
    );
    let start = Instant::now();
    let m = run_matrix(&Config::default(), &out)?;
    println!("{}", m.report);
    println!(
        "{} runs in {:.2} s, written to {}",
        m.results.len(),
        start.elapsed().as_secs_f64(),
        out.display()
    );
    Ok(())
}
