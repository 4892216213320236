//! Command implementations. Each returns its outputs in memory; the binary
//! decides where they go.

use std::path::Path;

use crate::config::Config;
use crate::constants::{rad_s_to_ghz, rad_s_to_hz, PhysicalConstants};
use crate::csvio::{fmt_num, gain_csv, read_gain_csv, sweep_csv};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::model::ModelVariant;
use crate::noise::{ingest_noise_csv, n_add, noise_csv};
use crate::params::{derive_params, DerivedParams, DeviceParams, PumpDrive};
use crate::pump::{integrate_to_steady_state_observed, PumpState, PumpSystem, SteadyStateReport};
use crate::scattering::{bandwidth_metrics, profile_at_steady_state, Bandwidth, GainProfile};
use crate::svg::{emit_svg, Series};
use crate::sweep::{run_sweep, SweepSpec};

const CONSTS: PhysicalConstants = PhysicalConstants::CODATA;

fn setup(cfg: &Config) -> Result<(DeviceParams, DerivedParams, PumpDrive)> {
    let dev = cfg.device();
    let derived = derive_params(&dev, &CONSTS)?;
    let drive = PumpDrive::from_dbm(cfg.pump_power_dbm, dev.omega_p, &CONSTS)?;
    Ok((dev, derived, drive))
}

/// Derived circuit quantities as `key = value` lines.
pub fn run_derive_command(cfg: &Config) -> Result<String> {
    let (dev, d, drive) = setup(cfg)?;
    let h = CONSTS.planck();
    let lines = [
        ("e_j_over_h_ghz", d.e_j / h / 1e9),
        ("e_t_over_h_ghz", d.e_t / h / 1e9),
        ("z_j_ohm", d.z_j),
        ("z_t_ohm", d.z_t),
        ("c1", d.c1),
        ("c2", d.c2),
        ("kappa_over_2pi_ghz", rad_s_to_ghz(d.kappa)),
        ("kappa_bare_over_2pi_ghz", rad_s_to_ghz(d.kappa_bare)),
        ("pump_freq_ghz", rad_s_to_ghz(dev.omega_p)),
        ("alpha_in_sqrt_hz", drive.alpha_in),
        ("pump_photon_flux_hz", drive.alpha_in * drive.alpha_in),
    ];
    Ok(lines
        .iter()
        .map(|(k, v)| format!("{k} = {}\n", fmt_num(*v)))
        .collect())
}

pub struct PumpRun {
    pub report: SteadyStateReport,
    /// `key = value` summary of the steady state.
    pub summary: String,
    /// Present when a trajectory was requested.
    pub trajectory_csv: Option<String>,
}

fn with_model(cfg: &Config, model: Option<ModelVariant>) -> Result<ModelVariant> {
    model.map_or_else(|| cfg.model(), Ok)
}

/// Integrate the pump. Non-convergence is left to the caller so that a
/// trajectory can still be written.
pub fn run_pump_command(
    cfg: &Config,
    model: Option<ModelVariant>,
    trajectory: bool,
) -> Result<PumpRun> {
    let model = with_model(cfg, model)?;
    let (dev, derived, drive) = setup(cfg)?;
    let system = PumpSystem::new(&dev, &derived, &drive, model);
    let mut samples: Vec<(f64, PumpState)> = Vec::new();
    let report =
        integrate_to_steady_state_observed(&system, &cfg.steady_state_options(), |t, s| {
            if trajectory {
                samples.push((t, *s));
            }
        })?;
    let s = report.state;
    let fields = [
        ("alpha_t_re", s.alpha_t.re),
        ("alpha_t_im", s.alpha_t.im),
        ("alpha_j_re", s.alpha_j.re),
        ("alpha_j_im", s.alpha_j.im),
        ("residual_per_s", report.residual),
        ("tol_per_s", report.tol),
        ("elapsed_model_time_s", report.elapsed_model_time),
    ];
    let mut summary = format!("model = {model}\nconverged = {}\n", report.converged);
    for (k, v) in fields {
        summary.push_str(&format!("{k} = {}\n", fmt_num(v)));
    }
    let trajectory_csv = trajectory.then(|| {
        let mut out = String::from("t_s,alpha_t_re,alpha_t_im,alpha_j_re,alpha_j_im\n");
        for (t, s) in &samples {
            let row = [*t, s.alpha_t.re, s.alpha_t.im, s.alpha_j.re, s.alpha_j.im];
            let row: Vec<String> = row.iter().map(|&v| fmt_num(v)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    });
    Ok(PumpRun {
        report,
        summary,
        trajectory_csv,
    })
}

pub struct GainRun {
    pub model: ModelVariant,
    pub profile: GainProfile,
    pub csv: String,
}

/// One profile per model, in the order given (config model if empty).
pub fn run_gain_command(
    cfg: &Config,
    models: &[ModelVariant],
    execution: Execution,
) -> Result<Vec<GainRun>> {
    let models = if models.is_empty() {
        vec![cfg.model()?]
    } else {
        models.to_vec()
    };
    let (dev, derived, drive) = setup(cfg)?;
    let grid = cfg.grid()?;
    let options = cfg.steady_state_options();
    models
        .into_iter()
        .map(|model| {
            let system = PumpSystem::new(&dev, &derived, &drive, model);
            let report = crate::pump::integrate_to_steady_state(&system, &options)?;
            report.require_converged()?;
            let profile = profile_at_steady_state(&system, &report, &grid, execution)?;
            if let Ok(m) = bandwidth_metrics(&profile) {
                let bw = match m.bandwidth {
                    Bandwidth::Resolved { width, .. } => {
                        format!("{:.1} MHz", rad_s_to_hz(width) / 1e6)
                    }
                    Bandwidth::ExceedsGrid { .. } => "exceeds grid".to_string(),
                };
                log::info!(
                    "{model}: peak {:.2} dB, 3-dB bandwidth {bw}",
                    m.peak_gain_db
                );
            }
            let csv = gain_csv(&profile);
            Ok(GainRun {
                model,
                profile,
                csv,
            })
        })
        .collect()
}

/// Overlay of computed profiles, one legend entry per label.
pub fn gain_svg(runs: &[(String, &GainProfile)]) -> Result<String> {
    let series: Vec<Series> = runs
        .iter()
        .map(|(label, p)| Series {
            label: label.clone(),
            points: p
                .entries
                .iter()
                .map(|e| (rad_s_to_ghz(e.signal_freq), e.gain_db))
                .collect(),
        })
        .collect();
    emit_svg(&series)
}

pub fn run_sweep_command(
    cfg: &Config,
    model: Option<ModelVariant>,
    execution: Execution,
) -> Result<String> {
    let model = with_model(cfg, model)?;
    let sweep = cfg
        .sweep
        .ok_or_else(|| Error::Config("sweep needs a [sweep] table".into()))?;
    let spec = SweepSpec::from_ghz(
        sweep.powers()?,
        &sweep.frequencies_ghz(cfg.omega_p_ghz)?,
        cfg.grid()?,
        model,
    );
    let result = run_sweep(
        &cfg.device(),
        &CONSTS,
        &spec,
        &cfg.steady_state_options(),
        execution,
    )?;
    Ok(sweep_csv(&result))
}

pub fn run_noise_command(input: &Path) -> Result<String> {
    let records = ingest_noise_csv(input)?;
    let estimates = records
        .iter()
        .map(|r| n_add(r, &CONSTS))
        .collect::<Result<Vec<_>>>()?;
    for e in estimates.iter().filter(|e| e.is_negative()) {
        log::warn!(
            "negative added noise {:.3} at {:.4} GHz",
            e.n_add,
            rad_s_to_ghz(e.omega)
        );
    }
    Ok(noise_csv(&estimates))
}

/// Overlay existing gain CSVs; legends are the file stems.
pub fn run_plot_command(inputs: &[impl AsRef<Path>]) -> Result<String> {
    let series = inputs
        .iter()
        .map(|p| {
            let p = p.as_ref();
            let points = read_gain_csv(p)?
                .into_iter()
                .map(|(f_hz, g)| (f_hz / 1e9, g))
                .collect();
            Ok(Series {
                label: stem(p),
                points,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    emit_svg(&series)
}

pub fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
