//! Simulator for impedance-engineered Josephson parametric amplifiers.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod constants;
pub mod csvio;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod model;
pub mod noise;
pub mod ode;
pub mod params;
pub mod pump;
pub mod scattering;
pub mod specfun;
pub mod svg;
pub mod sweep;

pub use error::{Error, Result};
