use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A time or coordinate fell outside the interval an operation is defined on.
    #[error("{what} = {value} outside [{lo}, {hi}]")]
    Domain {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: String, reason: String },

    #[error("config line {line}: {reason}")]
    Config { line: usize, reason: String },

    #[error("rotated surface is not a graph y(x) over s in [{lo}, {hi}]")]
    NotAGraph { lo: f64, hi: f64 },

    #[error("closest-point search did not converge for query ({x}, {y}) at t = {t}")]
    NoConvergence { x: f64, y: f64, t: f64 },

    #[error("non-finite {what}")]
    NonFinite { what: &'static str },

    #[error("tip boundary iteration did not converge (residual {residual:e})")]
    BoundaryIteration { residual: f64 },

    #[error("run `{label}` failed at t = {t}: {source}")]
    Run {
        label: String,
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn invalid(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name: name.into(),
            reason: reason.into(),
        }
    }

    /// Configuration problems map to exit code 2, numerical failures to 3.
    pub fn is_config(&self) -> bool {
        match self {
            Error::InvalidParam { .. } | Error::Config { .. } => true,
            Error::Run { source, .. } => source.is_config(),
            _ => false,
        }
    }

    /// Time at which a numerical failure happened, when known.
    pub fn failing_time(&self) -> Option<f64> {
        match self {
            Error::NoConvergence { t, .. } | Error::Run { t, .. } => Some(*t),
            _ => None,
        }
    }
}

pub(crate) fn check_time(t: f64, duration: f64) -> Result<()> {
    // Allow a few ulps of slack so grid points computed as k*dt hit the end.
    let slack = 1e-12 * duration.max(1.0);
    if !(t >= -slack && t <= duration + slack) {
        return Err(Error::Domain {
            what: "t",
            value: t,
            lo: 0.0,
            hi: duration,
        });
    }
    Ok(())
}
