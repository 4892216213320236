//! Weak-signal response around the pump steady state.
//!
//! Perturbations are ordered `v = (a_T(Δ), a_J(Δ), a_T†(−Δ), a_J†(−Δ))`
//! (bare circuit: `(a_J(Δ), a_J†(−Δ))`) and obey `(A + iΔ)·v = −B·u`, where
//! `u` stacks `a_in(Δ)` and `a_in†(−Δ)`. Only the top rows of `A` are
//! written out; the bottom rows are their conjugates with the daggered and
//! undaggered columns swapped.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{CMatrix, Lu};
use crate::model::{Circuit, Topology};
use crate::params::{DerivedParams, DeviceParams, PumpDrive};
use crate::pump::{
    integrate_to_steady_state, junction_drives, PumpState, PumpSystem, SteadyStateOptions,
    SteadyStateReport,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Points whose 1-norm condition number exceeds this are flagged as close
/// to the parametric oscillation threshold.
pub const NEAR_THRESHOLD_CONDITION: f64 = 1e3;

/// The detuning-independent part `A` of the fluctuation operator.
#[derive(Debug, Clone)]
pub struct FluctuationDrift {
    drift: CMatrix,
    /// `√κ` on the line-coupled rows, zero elsewhere.
    input_map: Vec<Complex64>,
    kappa: f64,
}

/// The fluctuation operator `A + iΔ` at one detuning.
#[derive(Debug, Clone)]
pub struct FluctuationSystem {
    pub delta: f64,
    pub matrix: CMatrix,
    pub input_map: Vec<Complex64>,
    /// Linewidth of the line-coupled mode, rad/s.
    pub kappa: f64,
}

fn conjugate_completion(top: &[Vec<Complex64>]) -> CMatrix {
    let h = top.len();
    let n = 2 * h;
    let mut m = CMatrix::zeros(n);
    for (r, row) in top.iter().enumerate() {
        for c in 0..n {
            m[(r, c)] = row[c];
            m[(r + h, c)] = row[(c + h) % n].conj();
        }
    }
    m
}

impl FluctuationDrift {
    /// Linearize `system` about `state`. No convergence check.
    pub fn at_state(system: &PumpSystem, state: &PumpState) -> Self {
        let dev = &system.dev;
        let d = &system.derived;
        let Circuit {
            topology,
            jpa,
            transformer,
        } = system.circuit;
        let drives = junction_drives(state, d, dev.m_junctions);
        let [j0j, _, j2j] = jpa.j012(drives.a_jpa);
        let e2j = Complex64::from_polar(1.0, 2.0 * drives.phi_jpa);
        let gj = d.e_j_rate;
        let c1 = d.c1;
        let c2 = d.c2;
        let kappa = system.linewidth();
        let sk = Complex64::new(kappa.sqrt(), 0.0);
        let zero = Complex64::new(0.0, 0.0);

        let (top, input_map) = match topology {
            Topology::Engineered => {
                let [j0e, _, j2e] = transformer.j012(drives.a_eff);
                let e2e = Complex64::from_polar(1.0, 2.0 * drives.phi_eff);
                let gt = d.e_t_rate;
                let row_t = vec![
                    I * dev.omega_p
                        - I * dev.omega_t_eff / 2.0
                        - kappa / 2.0
                        - I * gt * c1 * c1 * j0e,
                    I * gt * c1 * c2 * j0e,
                    I * gt * c1 * c1 * j2e * e2e,
                    -I * gt * c1 * c2 * j2e * e2e,
                ];
                let row_j = vec![
                    I * gt * c2 * c1 * j0e,
                    I * (dev.omega_p - dev.omega_j / 2.0)
                        - I * gj * c2 * c2 * j0j
                        - I * gt * c2 * c2 * j0e,
                    -I * gt * c2 * c1 * j2e * e2e,
                    I * gj * c2 * c2 * j2j * e2j + I * gt * c2 * c2 * j2e * e2e,
                ];
                (vec![row_t, row_j], vec![sk, zero, sk, zero])
            }
            Topology::Bare => {
                let row_j = vec![
                    I * (dev.omega_p - dev.omega_j / 2.0) - kappa / 2.0 - I * gj * c2 * c2 * j0j,
                    I * gj * c2 * c2 * j2j * e2j,
                ];
                (vec![row_j], vec![sk, sk])
            }
        };
        FluctuationDrift {
            drift: conjugate_completion(&top),
            input_map,
            kappa,
        }
    }

    pub fn drift(&self) -> &CMatrix {
        &self.drift
    }

    pub fn at(&self, delta: f64) -> FluctuationSystem {
        let mut matrix = self.drift.clone();
        for i in 0..matrix.dim() {
            matrix[(i, i)] += I * delta;
        }
        FluctuationSystem {
            delta,
            matrix,
            input_map: self.input_map.clone(),
            kappa: self.kappa,
        }
    }
}

/// Fluctuation operator at `delta` about a converged pump state.
pub fn build_fluctuation_system(
    delta: f64,
    system: &PumpSystem,
    pump: &SteadyStateReport,
) -> Result<FluctuationSystem> {
    pump.require_converged()?;
    Ok(FluctuationDrift::at_state(system, &pump.state).at(delta))
}

/// Reflection and conversion amplitudes at one detuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SParams {
    /// Signal in → signal out.
    pub s_ss: Complex64,
    /// Idler in (`a_in†(−Δ)`) → signal out.
    pub s_si: Complex64,
    /// Idler in → idler out, from the conjugate rows.
    pub s_ii: Complex64,
    /// 1-norm condition number of `A + iΔ`.
    pub condition: f64,
}

impl SParams {
    /// Linear power gain |s_ss|².
    pub fn gain(&self) -> f64 {
        self.s_ss.norm_sqr()
    }

    pub fn gain_db(&self) -> f64 {
        10.0 * self.gain().log10()
    }

    /// `(|s_ss|² − |s_si|² − 1)/|s_ss|²`; zero for a lossless model.
    pub fn symplectic_residual(&self) -> f64 {
        (self.s_ss.norm_sqr() - self.s_si.norm_sqr() - 1.0) / self.s_ss.norm_sqr()
    }

    pub fn near_threshold(&self) -> bool {
        self.condition > NEAR_THRESHOLD_CONDITION
    }
}

/// Solve for the output amplitudes via `√κ·a_line = a_in + a_out`.
pub fn solve_scattering(system: &FluctuationSystem) -> Result<SParams> {
    let lu = Lu::factor(&system.matrix).map_err(|_| Error::Singular {
        delta: system.delta,
    })?;
    let inv = lu.inverse();
    let h = system.matrix.dim() / 2;
    let k = system.kappa;
    let s = SParams {
        s_ss: -k * inv[(0, 0)] - 1.0,
        s_si: -k * inv[(0, h)],
        s_ii: -k * inv[(h, h)] - 1.0,
        condition: lu.condition_1(),
    };
    if !(s.s_ss.is_finite() && s.s_si.is_finite()) {
        return Err(Error::Singular {
            delta: system.delta,
        });
    }
    Ok(s)
}

/// One detuning of a gain profile. Singular points are kept as gaps with
/// `s_params = None` and NaN gain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GainEntry {
    pub delta: f64,
    pub signal_freq: f64,
    pub s_params: Option<SParams>,
    pub gain_db: f64,
    pub symplectic_residual: f64,
    pub near_threshold: bool,
}

impl GainEntry {
    pub fn is_gap(&self) -> bool {
        self.s_params.is_none()
    }
}

#[derive(Debug, Clone)]
pub struct GainProfile {
    pub pump: SteadyStateReport,
    pub entries: Vec<GainEntry>,
}

impl GainProfile {
    pub fn any_near_threshold(&self) -> bool {
        self.entries.iter().any(|e| e.near_threshold)
    }
}

/// Steady-state and execution settings for [`gain_profile_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ProfileOptions {
    pub steady: SteadyStateOptions,
    pub execution: Execution,
}

/// Grid must be finite, strictly increasing and must not contain zero.
pub fn validate_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("no detunings".into()));
    }
    if let Some(x) = grid.iter().find(|x| !x.is_finite()) {
        return Err(Error::InvalidGrid(format!("non-finite detuning {x}")));
    }
    if grid.contains(&0.0) {
        return Err(Error::InvalidGrid(
            "contains delta = 0, where signal and idler coincide".into(),
        ));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(
            "detunings must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Gain profile with default solver settings.
pub fn gain_profile(
    dev: &DeviceParams,
    derived: &DerivedParams,
    drive: &PumpDrive,
    model: impl Into<Circuit>,
    grid: &[f64],
) -> Result<GainProfile> {
    let system = PumpSystem::new(dev, derived, drive, model);
    gain_profile_with(&system, grid, &ProfileOptions::default())
}

/// Integrate the pump once, then solve each detuning independently.
pub fn gain_profile_with(
    system: &PumpSystem,
    grid: &[f64],
    options: &ProfileOptions,
) -> Result<GainProfile> {
    validate_grid(grid)?;
    let report = integrate_to_steady_state(system, &options.steady)?;
    profile_at_steady_state(system, &report, grid, options.execution)
}

/// Per-detuning solves about an already computed steady state.
pub fn profile_at_steady_state(
    system: &PumpSystem,
    report: &SteadyStateReport,
    grid: &[f64],
    execution: Execution,
) -> Result<GainProfile> {
    validate_grid(grid)?;
    report.require_converged()?;
    let drift = FluctuationDrift::at_state(system, &report.state);
    let omega_p = system.dev.omega_p;
    let entries = execution.map(grid, |&delta| match solve_scattering(&drift.at(delta)) {
        Ok(s) => GainEntry {
            delta,
            signal_freq: omega_p + delta,
            s_params: Some(s),
            gain_db: s.gain_db(),
            symplectic_residual: s.symplectic_residual(),
            near_threshold: s.near_threshold(),
        },
        Err(_) => GainEntry {
            delta,
            signal_freq: omega_p + delta,
            s_params: None,
            gain_db: f64::NAN,
            symplectic_residual: f64::NAN,
            near_threshold: true,
        },
    });
    Ok(GainProfile {
        pump: *report,
        entries,
    })
}

/// Detunings spaced `span/(points−1)` across `[−span/2, span/2]`. An odd
/// count would land on Δ = 0, so it is shifted up by half a step.
pub fn signal_grid(span: f64, points: usize) -> Result<Vec<f64>> {
    if !(span.is_finite() && span > 0.0) {
        return Err(Error::InvalidGrid(format!(
            "span must be positive, got {span}"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points, got {points}"
        )));
    }
    let h = span / (points - 1) as f64;
    let offset = if points % 2 == 1 { 0.5 * h } else { 0.0 };
    let mid = (points - 1) as f64 / 2.0;
    Ok((0..points).map(|k| (k as f64 - mid) * h + offset).collect())
}

/// Width of the region around the peak where gain stays within 3 dB.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Bandwidth {
    Resolved {
        width: f64,
        lower: f64,
        upper: f64,
    },
    /// The gain never fell 3 dB below the peak on at least one side. The
    /// true width is at least `lower_bound`.
    ExceedsGrid {
        lower_bound: f64,
    },
}

impl Bandwidth {
    pub fn width(&self) -> Option<f64> {
        match *self {
            Bandwidth::Resolved { width, .. } => Some(width),
            Bandwidth::ExceedsGrid { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandwidthMetrics {
    pub peak_gain_db: f64,
    /// Detuning of the peak, rad/s.
    pub center: f64,
    pub bandwidth: Bandwidth,
}

/// Peak, its location and the 3-dB width of a profile. Gap entries are
/// skipped.
pub fn bandwidth_metrics(profile: &GainProfile) -> Result<BandwidthMetrics> {
    let samples: Vec<(f64, f64)> = profile
        .entries
        .iter()
        .filter(|e| e.gain_db.is_finite())
        .map(|e| (e.delta, e.gain_db))
        .collect();
    bandwidth_from_samples(&samples)
}

/// As [`bandwidth_metrics`] on raw `(x, gain_db)` samples sorted by `x`.
/// Crossings are located by linear interpolation in dB.
pub fn bandwidth_from_samples(samples: &[(f64, f64)]) -> Result<BandwidthMetrics> {
    if samples.is_empty() {
        return Err(Error::EmptyProfile);
    }
    let (peak_idx, &(center, peak)) = samples
        .iter()
        .enumerate()
        .fold(
            None,
            |best: Option<(usize, &(f64, f64))>, (i, s)| match best {
                Some((_, b)) if b.1 >= s.1 => best,
                _ => Some((i, s)),
            },
        )
        .expect("non-empty");
    let level = peak - 3.0;
    let crossing = |a: (f64, f64), b: (f64, f64)| a.0 + (level - a.1) / (b.1 - a.1) * (b.0 - a.0);

    let lower = (0..peak_idx)
        .rev()
        .find(|&i| samples[i].1 < level)
        .map(|i| crossing(samples[i], samples[i + 1]));
    let upper = (peak_idx + 1..samples.len())
        .find(|&i| samples[i].1 < level)
        .map(|i| crossing(samples[i - 1], samples[i]));
    let bandwidth = match (lower, upper) {
        (Some(lo), Some(hi)) => Bandwidth::Resolved {
            width: hi - lo,
            lower: lo,
            upper: hi,
        },
        _ => {
            let first = samples[0].0;
            let last = samples[samples.len() - 1].0;
            Bandwidth::ExceedsGrid {
                lower_bound: upper.unwrap_or(last) - lower.unwrap_or(first),
            }
        }
    };
    Ok(BandwidthMetrics {
        peak_gain_db: peak,
        center,
        bandwidth,
    })
}
