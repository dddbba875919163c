//! Parse a config file (or the defaults), validate it and print it back.
//!
//!     cargo run --example config_file -- [path]

use flexsim::config::Config;

fn main() -> flexsim::error::Result<()> {
    let cfg = match std::env::args().nth(1) {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    for note in cfg.validate()? {
        println!("# {note}");
    }
    print!("{}", cfg.render());
    Ok(())
}
