#![allow(dead_code)]

use paramp::constants::{ghz_to_rad_s, PhysicalConstants};
use paramp::params::{derive_params, DerivedParams, DeviceParams, PumpDrive};

pub const CONSTS: PhysicalConstants = PhysicalConstants::CODATA;

pub fn reference_device() -> DeviceParams {
    DeviceParams {
        omega_j: ghz_to_rad_s(6.5),
        omega_t_eff: ghz_to_rad_s(6.218),
        l_j: 0.37e-9,
        l_t: 1.9e-9,
        m_junctions: 3,
        r_env: 50.0,
        omega_p: ghz_to_rad_s(5.347),
    }
}

pub fn bare_device() -> DeviceParams {
    DeviceParams {
        omega_j: ghz_to_rad_s(7.05),
        l_j: 0.323e-9,
        ..reference_device()
    }
}

pub fn derived(dev: &DeviceParams) -> DerivedParams {
    derive_params(dev, &CONSTS).unwrap()
}

pub fn drive(dev: &DeviceParams, dbm: f64) -> PumpDrive {
    PumpDrive::from_dbm(dbm, dev.omega_p, &CONSTS).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

use num_complex::Complex64;
use rand::Rng;

/// Steady state of the all-harmonic circuit by Cramer's rule on
/// `0 = a·α + b`, written directly from the equations of motion.
pub fn linear_steady_state(
    dev: &DeviceParams,
    d: &DerivedParams,
    alpha_in: f64,
) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let gt = d.e_t / CONSTS.hbar;
    let gj = d.e_j / CONSTS.hbar;
    let a11 = i * dev.omega_p - (d.kappa + i * dev.omega_t_eff) / 2.0 - i * gt * d.c1 * d.c1;
    let a12 = i * gt * d.c1 * d.c2;
    let a21 = i * gt * d.c1 * d.c2;
    let a22 = i * dev.omega_p - i * dev.omega_j / 2.0 - i * gt * d.c2 * d.c2 - i * gj * d.c2 * d.c2;
    let b = d.kappa.sqrt() * alpha_in;
    let det = a11 * a22 - a12 * a21;
    (-b * a22 / det, b * a21 / det)
}

pub fn random_device(rng: &mut impl Rng) -> DeviceParams {
    use paramp::constants::ghz_to_rad_s;
    DeviceParams {
        omega_j: ghz_to_rad_s(rng.gen_range(5.0..8.0)),
        omega_t_eff: ghz_to_rad_s(rng.gen_range(5.0..8.0)),
        l_j: rng.gen_range(0.2e-9..0.5e-9),
        l_t: rng.gen_range(1.0e-9..3.0e-9),
        m_junctions: rng.gen_range(1..=6),
        r_env: 50.0,
        omega_p: ghz_to_rad_s(rng.gen_range(4.0..7.0)),
    }
}
