//! Grids of pump power and pump frequency, each point evaluated on its own.

use crate::constants::{ghz_to_rad_s, PhysicalConstants};
use crate::error::Result;
use crate::exec::Execution;
use crate::model::ModelVariant;
use crate::params::{derive_params, DeviceParams, PumpDrive};
use crate::pump::{integrate_to_steady_state, PumpSystem, SteadyStateOptions};
use crate::scattering::{bandwidth_metrics, profile_at_steady_state, BandwidthMetrics};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub powers_dbm: Vec<f64>,
    /// Pump angular frequencies, rad/s.
    pub pump_freqs: Vec<f64>,
    /// Detuning grid shared by every point, rad/s.
    pub grid: Vec<f64>,
    pub model: ModelVariant,
}

impl SweepSpec {
    pub fn from_ghz(
        powers_dbm: Vec<f64>,
        pump_freqs_ghz: &[f64],
        grid: Vec<f64>,
        model: ModelVariant,
    ) -> Self {
        SweepSpec {
            powers_dbm,
            pump_freqs: pump_freqs_ghz.iter().map(|&f| ghz_to_rad_s(f)).collect(),
            grid,
            model,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub power_dbm: f64,
    pub pump_freq: f64,
    pub converged: bool,
    /// `None` when the pump did not converge.
    pub metrics: Option<BandwidthMetrics>,
    /// Some grid point sits close to the oscillation threshold.
    pub threshold_flag: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Power-major: all frequencies of the first power, then the next.
    pub rows: Vec<SweepRow>,
}

pub fn run_sweep(
    dev: &DeviceParams,
    consts: &PhysicalConstants,
    spec: &SweepSpec,
    options: &SteadyStateOptions,
    execution: Execution,
) -> Result<SweepResult> {
    let points: Vec<(f64, f64)> = spec
        .powers_dbm
        .iter()
        .flat_map(|&p| spec.pump_freqs.iter().map(move |&f| (p, f)))
        .collect();
    let rows = execution.map(&points, |&(power_dbm, pump_freq)| {
        sweep_point(dev, consts, spec, options, power_dbm, pump_freq)
    });
    Ok(SweepResult {
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

fn sweep_point(
    dev: &DeviceParams,
    consts: &PhysicalConstants,
    spec: &SweepSpec,
    options: &SteadyStateOptions,
    power_dbm: f64,
    pump_freq: f64,
) -> Result<SweepRow> {
    let dev = dev.with_pump_frequency(pump_freq);
    let derived = derive_params(&dev, consts)?;
    let drive = PumpDrive::from_dbm(power_dbm, pump_freq, consts)?;
    let system = PumpSystem::new(&dev, &derived, &drive, spec.model);
    let report = integrate_to_steady_state(&system, options)?;
    if !report.converged {
        log::warn!("no steady state at {power_dbm} dBm, {pump_freq:e} rad/s");
        return Ok(SweepRow {
            power_dbm,
            pump_freq,
            converged: false,
            metrics: None,
            threshold_flag: false,
        });
    }
    // Points already run in parallel; keep the inner loop serial.
    let profile = profile_at_steady_state(&system, &report, &spec.grid, Execution::Serial)?;
    Ok(SweepRow {
        power_dbm,
        pump_freq,
        converged: true,
        metrics: bandwidth_metrics(&profile).ok(),
        threshold_flag: profile.any_near_threshold(),
    })
}
