//! Inverse dynamics of a planar two-link arm (rigid first link, flexible
//! second link) whose tip presses on a parabolic surface that may rotate.
//!
//! Prescribed joint trajectories go in; joint torques, the spring contact
//! force and the link deflection field come out. See `harness` for the
//! batch runner and the `flexsim` binary for the command line.

pub mod config;
pub mod dynamics;
pub mod error;
pub mod flexbeam;
pub mod harness;
pub mod params;
pub mod profile;
pub mod quadrature;
pub mod surface;
