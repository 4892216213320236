//! Physical constants (CODATA 2018, exact where the SI fixes them).

use std::f64::consts::PI;

/// Constants entering the circuit quantities and the added-noise estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Magnetic flux quantum h/2e, Wb.
    pub phi0: f64,
    /// Boltzmann constant, J/K.
    pub kb: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        hbar: 1.054_571_817e-34,
        phi0: 2.067_833_848e-15,
        kb: 1.380_649e-23,
    };

    /// Planck constant h = 2πħ.
    pub fn planck(&self) -> f64 {
        2.0 * PI * self.hbar
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

/// Convert a frequency in GHz to angular frequency in rad/s.
pub fn ghz_to_rad_s(ghz: f64) -> f64 {
    2.0 * PI * ghz * 1e9
}

/// Convert an angular frequency in rad/s to GHz.
pub fn rad_s_to_ghz(omega: f64) -> f64 {
    omega / (2.0 * PI * 1e9)
}

/// Convert an angular frequency in rad/s to Hz.
pub fn rad_s_to_hz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}
