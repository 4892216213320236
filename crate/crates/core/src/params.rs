//! Device parameters and the circuit quantities derived from them.
//!
//! Everything is SI internally: rad/s, H, Ω, J. The quoted inductances are
//! treated as purely junction-derived, so the Josephson energies follow from
//! `E = φ₀² / (4π² L)`.

use std::f64::consts::PI;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Raw circuit inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceParams {
    /// JPA resonance Ω_J, rad/s.
    pub omega_j: f64,
    /// Effective (environment-loaded) transformer frequency Ω_T,eff, rad/s.
    pub omega_t_eff: f64,
    /// Linearized JPA inductance, H.
    pub l_j: f64,
    /// Linearized inductance of the whole transformer junction chain, H.
    pub l_t: f64,
    /// Number of junctions in the transformer chain.
    pub m_junctions: u32,
    /// Environment (transmission line) impedance, Ω.
    pub r_env: f64,
    /// Pump angular frequency ω_p, rad/s.
    pub omega_p: f64,
}

impl DeviceParams {
    /// Checks strict positivity of every field and names the first offender.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega_j", self.omega_j),
            ("omega_t_eff", self.omega_t_eff),
            ("l_j", self.l_j),
            ("l_t", self.l_t),
            ("r_env", self.r_env),
            ("omega_p", self.omega_p),
        ];
        for (field, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParameter {
                    field,
                    value,
                    reason: "must be finite and strictly positive",
                });
            }
        }
        if self.m_junctions == 0 {
            return Err(Error::InvalidParameter {
                field: "m_junctions",
                value: 0.0,
                reason: "need at least one junction",
            });
        }
        Ok(())
    }

    /// Same device, different pump frequency.
    pub fn with_pump_frequency(mut self, omega_p: f64) -> Self {
        self.omega_p = omega_p;
        self
    }
}

/// Quantities derived from [`DeviceParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedParams {
    /// JPA Josephson energy E_J, J.
    pub e_j: f64,
    /// Transformer energy scale E_T (each junction carries M·E_T), J.
    pub e_t: f64,
    /// JPA mode impedance Z_J = Ω_J L_J, Ω.
    pub z_j: f64,
    /// Transformer mode impedance Z_T = Ω_T,eff L_T, Ω.
    pub z_t: f64,
    /// Zero-point phase scale across the transformer chain.
    pub c1: f64,
    /// Zero-point phase scale across the JPA junction.
    pub c2: f64,
    /// Transformer linewidth κ = R Ω_T,eff / Z_T, rad/s.
    pub kappa: f64,
    /// Linewidth of the JPA when it loads the line directly (no transformer),
    /// κ_J = Z_J Ω_J / R, rad/s.
    pub kappa_bare: f64,
    /// E_J/ħ, rad/s.
    pub e_j_rate: f64,
    /// E_T/ħ, rad/s.
    pub e_t_rate: f64,
}

/// Derive every circuit quantity used by the dynamics.
pub fn derive_params(dev: &DeviceParams, consts: &PhysicalConstants) -> Result<DerivedParams> {
    dev.validate()?;
    let flux_energy = consts.phi0 * consts.phi0 / (4.0 * PI * PI);
    let e_j = flux_energy / dev.l_j;
    let e_t = flux_energy / dev.l_t;
    let z_j = dev.omega_j * dev.l_j;
    let z_t = dev.omega_t_eff * dev.l_t;
    let phase_scale = 2.0 * PI / consts.phi0;
    let c1 = phase_scale * (consts.hbar * z_t / 2.0).sqrt();
    let c2 = phase_scale * (consts.hbar * z_j / 2.0).sqrt();
    Ok(DerivedParams {
        e_j,
        e_t,
        z_j,
        z_t,
        c1,
        c2,
        kappa: dev.r_env * dev.omega_t_eff / z_t,
        kappa_bare: z_j * dev.omega_j / dev.r_env,
        e_j_rate: e_j / consts.hbar,
        e_t_rate: e_t / consts.hbar,
    })
}

/// Classical pump at the device input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PumpDrive {
    pub power_dbm: f64,
    /// Input amplitude, √(photons/s). Real and nonnegative (pump phase 0).
    pub alpha_in: f64,
}

impl PumpDrive {
    pub fn from_dbm(power_dbm: f64, omega_p: f64, consts: &PhysicalConstants) -> Result<Self> {
        Ok(PumpDrive {
            power_dbm,
            alpha_in: dbm_to_input_amplitude(power_dbm, omega_p, consts)?,
        })
    }

    /// No pump at all (α_in = 0).
    pub fn off() -> Self {
        PumpDrive {
            power_dbm: f64::NEG_INFINITY,
            alpha_in: 0.0,
        }
    }
}

pub fn dbm_to_watts(power_dbm: f64) -> f64 {
    10f64.powf((power_dbm - 30.0) / 10.0)
}

/// √(P / ħω_p), the input amplitude whose square is the photon flux.
///
/// `-inf` dBm maps to zero.
pub fn dbm_to_input_amplitude(
    power_dbm: f64,
    omega_p: f64,
    consts: &PhysicalConstants,
) -> Result<f64> {
    if power_dbm.is_nan() || power_dbm == f64::INFINITY {
        return Err(Error::InvalidParameter {
            field: "pump_power_dbm",
            value: power_dbm,
            reason: "must be finite (or -inf for no pump)",
        });
    }
    if !(omega_p.is_finite() && omega_p > 0.0) {
        return Err(Error::InvalidParameter {
            field: "omega_p",
            value: omega_p,
            reason: "must be finite and strictly positive",
        });
    }
    Ok((dbm_to_watts(power_dbm) / (consts.hbar * omega_p)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::ghz_to_rad_s;

    fn reference_device() -> DeviceParams {
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

    #[test]
    fn rejects_nonpositive_fields_by_name() {
        let mut dev = reference_device();
        dev.l_t = 0.0;
        match derive_params(&dev, &PhysicalConstants::CODATA) {
            Err(Error::InvalidParameter { field, .. }) => assert_eq!(field, "l_t"),
            other => panic!("unexpected {other:?}"),
        }
        let mut dev = reference_device();
        dev.r_env = -50.0;
        match derive_params(&dev, &PhysicalConstants::CODATA) {
            Err(Error::InvalidParameter { field, .. }) => assert_eq!(field, "r_env"),
            other => panic!("unexpected {other:?}"),
        }
        let mut dev = reference_device();
        dev.m_junctions = 0;
        assert!(derive_params(&dev, &PhysicalConstants::CODATA).is_err());
        let mut dev = reference_device();
        dev.omega_p = f64::NAN;
        assert!(derive_params(&dev, &PhysicalConstants::CODATA).is_err());
    }

    #[test]
    fn doubling_inductance_halves_energy() {
        let consts = PhysicalConstants::CODATA;
        let a = derive_params(&reference_device(), &consts).unwrap();
        let mut dev = reference_device();
        dev.l_j *= 2.0;
        let b = derive_params(&dev, &consts).unwrap();
        assert!((b.e_j / a.e_j - 0.5).abs() < 1e-15);
        assert!((b.c2 / a.c2 - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn zero_dbm_is_one_milliwatt() {
        assert_eq!(dbm_to_watts(0.0), 1e-3);
        let consts = PhysicalConstants::CODATA;
        let w = ghz_to_rad_s(5.0);
        let a = dbm_to_input_amplitude(0.0, w, &consts).unwrap();
        assert!((a * a * consts.hbar * w / 1e-3 - 1.0).abs() < 1e-14);
        assert_eq!(
            dbm_to_input_amplitude(f64::NEG_INFINITY, w, &consts).unwrap(),
            0.0
        );
        assert!(dbm_to_input_amplitude(f64::NAN, w, &consts).is_err());
        assert!(dbm_to_input_amplitude(0.0, 0.0, &consts).is_err());
    }

    #[test]
    fn input_amplitude_is_monotone_in_power() {
        let consts = PhysicalConstants::CODATA;
        let w = ghz_to_rad_s(5.347);
        let mut last = 0.0;
        for p in (-200..=10).map(|p| p as f64) {
            let a = dbm_to_input_amplitude(p, w, &consts).unwrap();
            assert!(a > last);
            last = a;
        }
    }
}
