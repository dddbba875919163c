use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use flexsim::config::{Config, SurfaceMode};
use flexsim::error::Error;
use flexsim::harness::{self, RunSpec};
use flexsim::profile::ProfileShape;

#[derive(Parser)]
#[command(
    name = "flexsim",
    version,
    about = "Inverse dynamics of a rigid-flexible arm in contact with a rotating surface"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one joint-profile / surface combination.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "sine")]
        joint_profile: ProfileShape,
        #[arg(long, default_value = "rotating")]
        surface: SurfaceMode,
        /// Defaults to the profile named in the config file.
        #[arg(long)]
        surface_profile: Option<ProfileShape>,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Also write the full deflection field w(x, t).
        #[arg(long)]
        dump_field: bool,
    },
    /// Run all fifteen combinations and write a summary and report.
    Matrix {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Check a config without simulating.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

/// Load and check a config; any problem here is a config error.
fn load(path: &PathBuf) -> Result<(Config, Vec<String>), ExitCode> {
    let checked = Config::load(path).and_then(|cfg| cfg.validate().map(|notes| (cfg, notes)));
    checked.map_err(|e| {
        eprintln!("config error: {e}");
        ExitCode::from(2)
    })
}

fn fail(e: Error) -> ExitCode {
    if e.is_config() {
        eprintln!("config error: {e}");
        return ExitCode::from(2);
    }
    if let Error::Io { .. } = e {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    eprintln!("numerical failure: {e}");
    ExitCode::from(3)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            joint_profile,
            surface,
            surface_profile,
            out,
            dump_field,
        } => {
            let cfg = match load(&config) {
                Ok((c, _)) => c,
                Err(code) => return code,
            };
            let profile = surface_profile.unwrap_or(cfg.surface.profile);
            let spec = RunSpec::new(&cfg, joint_profile, surface, profile);
            match harness::run_single(&spec, &out, dump_field) {
                Ok(r) => {
                    let s = r.summary;
                    println!(
                        "{}: max|F| = {} N, max|tau1| = {} N m, max|tau2| = {} N m, final |F| = {} N",
                        r.label, s.max_fmag, s.max_tau1, s.max_tau2, s.terminal_fmag
                    );
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Matrix { config, out } => {
            let cfg = match load(&config) {
                Ok((c, _)) => c,
                Err(code) => return code,
            };
            match harness::run_matrix(&cfg, &out) {
                Ok(m) => {
                    print!("{}", m.summary_csv);
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Validate { config } => match load(&config) {
            Ok((_, notes)) => {
                for note in notes {
                    println!("{note}");
                }
                println!("ok");
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
    }
}
