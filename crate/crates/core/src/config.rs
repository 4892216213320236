//! TOML run configuration.
//!
//! Device keys sit at top level in lab units (GHz, nH, Ω, dBm). Optional
//! `[grid]`, `[sweep]` and `[solver]` tables refine the run:
//!
//! ```toml
//! omega_j_ghz = 6.5
//! omega_t_eff_ghz = 6.218
//! l_j_nh = 0.37
//! l_t_nh = 1.9
//! m_junctions = 3
//! r_env_ohm = 50.0
//! omega_p_ghz = 5.347
//! pump_power_dbm = -88.0
//! model = "full"
//!
//! [grid]
//! span_ghz = 1.0
//! points = 667
//! ```

use std::path::Path;

use serde::Deserialize;

use crate::constants::ghz_to_rad_s;
use crate::error::{Error, Result};
use crate::model::ModelVariant;
use crate::params::DeviceParams;
use crate::pump::SteadyStateOptions;
use crate::scattering::signal_grid;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub omega_j_ghz: f64,
    pub omega_t_eff_ghz: f64,
    pub l_j_nh: f64,
    pub l_t_nh: f64,
    pub m_junctions: u32,
    pub r_env_ohm: f64,
    pub omega_p_ghz: f64,
    pub pump_power_dbm: f64,
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default)]
    pub grid: GridConfig,
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub solver: SolverConfig,
}

fn default_model() -> String {
    ModelVariant::FullSineIEJPA.name().to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub span_ghz: f64,
    pub points: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            span_ghz: 1.0,
            points: 667,
        }
    }
}

/// Power and pump-frequency ranges, inclusive. Frequencies default to the
/// single configured pump frequency.
#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub power_start_dbm: f64,
    pub power_stop_dbm: f64,
    pub power_step_db: f64,
    pub freq_start_ghz: Option<f64>,
    pub freq_stop_ghz: Option<f64>,
    pub freq_step_ghz: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverConfig {
    /// Steady-state residual relative to the drive rate.
    pub tol_rel: f64,
    /// Model-time budget in linewidths.
    pub max_time_kappa: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let d = SteadyStateOptions::default();
        SolverConfig {
            tol_rel: d.relative_tol,
            max_time_kappa: d.max_time_linewidths,
        }
    }
}

impl Config {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Config::from_toml_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    /// Every check the run would otherwise hit later.
    pub fn validate(&self) -> Result<()> {
        self.device().validate()?;
        self.model()?;
        if self.pump_power_dbm.is_nan() || self.pump_power_dbm == f64::INFINITY {
            return Err(Error::Config(format!(
                "pump_power_dbm must be finite, got {}",
                self.pump_power_dbm
            )));
        }
        self.grid()?;
        if let Some(s) = &self.sweep {
            s.powers()?;
            s.frequencies_ghz(self.omega_p_ghz)?;
        }
        let s = &self.solver;
        if !(s.tol_rel > 0.0 && s.tol_rel.is_finite()) {
            return Err(Error::Config("solver.tol_rel must be positive".into()));
        }
        if !(s.max_time_kappa > 0.0 && s.max_time_kappa.is_finite()) {
            return Err(Error::Config(
                "solver.max_time_kappa must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn device(&self) -> DeviceParams {
        DeviceParams {
            omega_j: ghz_to_rad_s(self.omega_j_ghz),
            omega_t_eff: ghz_to_rad_s(self.omega_t_eff_ghz),
            l_j: self.l_j_nh * 1e-9,
            l_t: self.l_t_nh * 1e-9,
            m_junctions: self.m_junctions,
            r_env: self.r_env_ohm,
            omega_p: ghz_to_rad_s(self.omega_p_ghz),
        }
    }

    pub fn model(&self) -> Result<ModelVariant> {
        self.model.parse()
    }

    /// Detuning grid in rad/s.
    pub fn grid(&self) -> Result<Vec<f64>> {
        signal_grid(ghz_to_rad_s(self.grid.span_ghz), self.grid.points)
    }

    pub fn steady_state_options(&self) -> SteadyStateOptions {
        SteadyStateOptions {
            relative_tol: self.solver.tol_rel,
            max_time_linewidths: self.solver.max_time_kappa,
            ..SteadyStateOptions::default()
        }
    }
}

/// `start, start + step, …` up to `stop` (inclusive, with rounding slack).
fn inclusive_range(what: &str, start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if ![start, stop, step].iter().all(|v| v.is_finite()) {
        return Err(Error::Config(format!("{what} range must be finite")));
    }
    if step <= 0.0 {
        return Err(Error::Config(format!(
            "{what} step must be positive, got {step}"
        )));
    }
    if stop < start {
        return Err(Error::Config(format!(
            "{what} range is empty ({start} > {stop})"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| start + k as f64 * step).collect())
}

impl SweepConfig {
    pub fn powers(&self) -> Result<Vec<f64>> {
        inclusive_range(
            "sweep power",
            self.power_start_dbm,
            self.power_stop_dbm,
            self.power_step_db,
        )
    }

    pub fn frequencies_ghz(&self, default_ghz: f64) -> Result<Vec<f64>> {
        match (self.freq_start_ghz, self.freq_stop_ghz, self.freq_step_ghz) {
            (None, None, None) => Ok(vec![default_ghz]),
            (Some(a), Some(b), Some(h)) => inclusive_range("sweep frequency", a, b, h),
            (Some(a), None, None) => Ok(vec![a]),
            _ => Err(Error::Config(
                "sweep frequency needs freq_start_ghz, freq_stop_ghz and freq_step_ghz".into(),
            )),
        }
    }
}
