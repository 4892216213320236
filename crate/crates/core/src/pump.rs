//! Classical pump: equations of motion in the pump frame and their steady
//! state reached from empty cavities.
//!
//! The transformer chain of M junctions carries the potential
//! `−M²E_T cos(φ/M)`, so its force on either mode is `M·E_T·c·J₁(A_eff)`.
//! The linearization of these equations is exactly the fluctuation operator
//! in [`crate::scattering`] at zero detuning.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Lu};
use crate::model::{Circuit, Topology};
use crate::ode::{DormandPrince, StepControl};
use crate::params::{DerivedParams, DeviceParams, PumpDrive};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Intracavity pump amplitudes in the frame rotating at ω_p.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PumpState {
    pub alpha_t: Complex64,
    pub alpha_j: Complex64,
}

impl PumpState {
    pub const EMPTY: PumpState = PumpState {
        alpha_t: Complex64::new(0.0, 0.0),
        alpha_j: Complex64::new(0.0, 0.0),
    };

    pub fn norm(&self) -> f64 {
        (self.alpha_t.norm_sqr() + self.alpha_j.norm_sqr()).sqrt()
    }

    fn to_real(self) -> [f64; 4] {
        [
            self.alpha_t.re,
            self.alpha_t.im,
            self.alpha_j.re,
            self.alpha_j.im,
        ]
    }

    fn from_real(y: &[f64; 4]) -> Self {
        PumpState {
            alpha_t: Complex64::new(y[0], y[1]),
            alpha_j: Complex64::new(y[2], y[3]),
        }
    }
}

/// Pump phase drops across the junctions: `A e^{iφ}` in polar form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JunctionDrive {
    /// Across each junction of the transformer chain.
    pub a_eff: f64,
    pub phi_eff: f64,
    /// Across the JPA junction.
    pub a_jpa: f64,
    pub phi_jpa: f64,
}

impl JunctionDrive {
    pub fn eff_phasor(&self) -> Complex64 {
        Complex64::from_polar(self.a_eff, self.phi_eff)
    }

    pub fn jpa_phasor(&self) -> Complex64 {
        Complex64::from_polar(self.a_jpa, self.phi_jpa)
    }
}

fn chain_phasor(state: &PumpState, derived: &DerivedParams, m: u32) -> Complex64 {
    2.0 * (derived.c1 * state.alpha_t - derived.c2 * state.alpha_j) / m as f64
}

fn jpa_phasor(state: &PumpState, derived: &DerivedParams) -> Complex64 {
    2.0 * derived.c2 * state.alpha_j
}

/// `A_eff e^{iφ_eff} = 2(c₁α_T − c₂α_J)/M` and `A_jpa e^{iφ_jpa} = 2c₂α_J`.
pub fn junction_drives(state: &PumpState, derived: &DerivedParams, m: u32) -> JunctionDrive {
    let (a_eff, phi_eff) = chain_phasor(state, derived, m).to_polar();
    let (a_jpa, phi_jpa) = jpa_phasor(state, derived).to_polar();
    JunctionDrive {
        a_eff,
        phi_eff,
        a_jpa,
        phi_jpa,
    }
}

/// Everything the pump equations depend on, bundled.
#[derive(Debug, Clone, Copy)]
pub struct PumpSystem {
    pub dev: DeviceParams,
    pub derived: DerivedParams,
    pub drive: PumpDrive,
    pub circuit: Circuit,
}

impl PumpSystem {
    pub fn new(
        dev: &DeviceParams,
        derived: &DerivedParams,
        drive: &PumpDrive,
        circuit: impl Into<Circuit>,
    ) -> Self {
        PumpSystem {
            dev: *dev,
            derived: *derived,
            drive: *drive,
            circuit: circuit.into(),
        }
    }

    /// Decay rate of the mode attached to the line.
    pub fn linewidth(&self) -> f64 {
        match self.circuit.topology {
            Topology::Engineered => self.derived.kappa,
            Topology::Bare => self.derived.kappa_bare,
        }
    }

    /// √κ·α_in, the drive term of the line-coupled mode.
    pub fn drive_rate(&self) -> f64 {
        self.linewidth().sqrt() * self.drive.alpha_in
    }

    /// `(dα_T/dt, dα_J/dt)`. In the bare topology α_T is absent and its
    /// derivative is zero.
    pub fn derivative(&self, s: &PumpState) -> (Complex64, Complex64) {
        let dev = &self.dev;
        let d = &self.derived;
        let w_jpa = jpa_phasor(s, d);
        let jpa_force = self.circuit.jpa.j1_over_a(w_jpa.norm()) * w_jpa;
        match self.circuit.topology {
            Topology::Engineered => {
                let m = dev.m_junctions as f64;
                let w_eff = chain_phasor(s, d, dev.m_junctions);
                let chain_force = self.circuit.transformer.j1_over_a(w_eff.norm()) * w_eff;
                let chain_rate = m * d.e_t_rate;
                let dt = I * dev.omega_p * s.alpha_t
                    - 0.5 * Complex64::new(d.kappa, dev.omega_t_eff) * s.alpha_t
                    + self.drive_rate()
                    - I * chain_rate * d.c1 * chain_force;
                let dj = I * dev.omega_p * s.alpha_j - I * (dev.omega_j / 2.0) * s.alpha_j
                    + I * chain_rate * d.c2 * chain_force
                    - I * d.e_j_rate * d.c2 * jpa_force;
                (dt, dj)
            }
            Topology::Bare => {
                let dj = I * dev.omega_p * s.alpha_j
                    - 0.5 * Complex64::new(d.kappa_bare, dev.omega_j) * s.alpha_j
                    + self.drive_rate()
                    - I * d.e_j_rate * d.c2 * jpa_force;
                (Complex64::new(0.0, 0.0), dj)
            }
        }
    }

    pub fn residual(&self, s: &PumpState) -> f64 {
        let (a, b) = self.derivative(s);
        (a.norm_sqr() + b.norm_sqr()).sqrt()
    }

    fn real_rhs(&self, y: &[f64; 4]) -> [f64; 4] {
        let (a, b) = self.derivative(&PumpState::from_real(y));
        [a.re, a.im, b.re, b.im]
    }
}

/// Free-function form of [`PumpSystem::derivative`].
pub fn pump_derivative(
    state: &PumpState,
    derived: &DerivedParams,
    dev: &DeviceParams,
    drive: &PumpDrive,
    model: impl Into<Circuit>,
) -> (Complex64, Complex64) {
    PumpSystem::new(dev, derived, drive, model).derivative(state)
}

/// Integrator and convergence settings.
#[derive(Debug, Clone, Copy)]
pub struct SteadyStateOptions {
    /// Residual bound relative to the drive rate `√κ·α_in`.
    pub relative_tol: f64,
    /// Absolute residual bound in 1/s; overrides `relative_tol`.
    pub absolute_tol: Option<f64>,
    /// Model-time budget in units of `1/κ`.
    pub max_time_linewidths: f64,
    /// Relative step tolerance of the Runge–Kutta controller.
    pub rtol: f64,
    /// The residual must stay below the bound for `window_linewidths/κ`.
    pub window_linewidths: f64,
    /// Refine a converged state with Newton iterations.
    pub polish: bool,
}

impl Default for SteadyStateOptions {
    fn default() -> Self {
        SteadyStateOptions {
            relative_tol: 1e-6,
            absolute_tol: None,
            max_time_linewidths: 1e4,
            rtol: 1e-10,
            window_linewidths: 10.0,
            polish: true,
        }
    }
}

/// Outcome of integrating the pump from empty cavities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyStateReport {
    pub state: PumpState,
    /// Norm of the pump-frame time derivative at `state`, 1/s.
    pub residual: f64,
    pub elapsed_model_time: f64,
    pub converged: bool,
    pub tol: f64,
    pub steps: u64,
}

impl SteadyStateReport {
    pub fn require_converged(&self) -> Result<&Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NotConverged {
                residual: self.residual,
                elapsed: self.elapsed_model_time,
            })
        }
    }
}

/// Integrate from α_T = α_J = 0 until the residual has stayed below `tol`
/// for the trailing window. Non-convergence is reported in-band.
pub fn integrate_to_steady_state(
    system: &PumpSystem,
    options: &SteadyStateOptions,
) -> Result<SteadyStateReport> {
    integrate_to_steady_state_observed(system, options, |_, _| {})
}

/// As [`integrate_to_steady_state`], calling `observe(t, state)` at the
/// initial point and after every accepted step.
pub fn integrate_to_steady_state_observed(
    system: &PumpSystem,
    options: &SteadyStateOptions,
    mut observe: impl FnMut(f64, &PumpState),
) -> Result<SteadyStateReport> {
    let kappa = system.linewidth();
    let drive_rate = system.drive_rate();
    let tol = options
        .absolute_tol
        .unwrap_or(options.relative_tol * drive_rate);
    let max_time = options.max_time_linewidths / kappa;
    if system.drive.alpha_in == 0.0 {
        observe(0.0, &PumpState::EMPTY);
        return Ok(SteadyStateReport {
            state: PumpState::EMPTY,
            residual: 0.0,
            elapsed_model_time: 0.0,
            converged: true,
            tol,
            steps: 0,
        });
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidParameter {
            field: "tol",
            value: tol,
            reason: "must be finite and strictly positive",
        });
    }
    if !(max_time > 0.0) {
        return Err(Error::InvalidParameter {
            field: "max_time_linewidths",
            value: options.max_time_linewidths,
            reason: "must be strictly positive",
        });
    }

    // Empty-cavity response of the line-coupled mode sets the amplitude scale.
    let amplitude_scale = 2.0 * drive_rate / kappa;
    let control = StepControl {
        rtol: options.rtol,
        atol: options.rtol * amplitude_scale,
        h_init: 1e-3 / kappa,
        h_max: 10.0 / kappa,
    };
    let window = options.window_linewidths / kappa;
    let mut rhs = |y: &[f64; 4]| system.real_rhs(y);
    let mut dp = DormandPrince::new(&mut rhs, [0.0; 4], control);
    observe(0.0, &PumpState::EMPTY);

    let residual_of = |dy: &[f64; 4]| dy.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut best = (PumpState::EMPTY, residual_of(&dp.dy));
    let mut below_since: Option<f64> = None;
    let mut converged = false;
    while dp.t < max_time {
        let t_prev = dp.t;
        if !dp.step(&mut rhs) {
            break;
        }
        let state = PumpState::from_real(&dp.y);
        observe(dp.t, &state);
        let residual = residual_of(&dp.dy);
        if !residual.is_finite() {
            break;
        }
        if residual < best.1 {
            best = (state, residual);
        }
        if residual < tol {
            let start = *below_since.get_or_insert(t_prev);
            if dp.t - start >= window {
                best = (state, residual);
                converged = true;
                break;
            }
        } else {
            below_since = None;
        }
    }

    let (mut state, mut residual) = best;
    if converged && options.polish {
        if let Some((s, r)) = newton_polish(system, &state, amplitude_scale) {
            if r < residual {
                state = s;
                residual = r;
            }
        }
    }
    Ok(SteadyStateReport {
        state,
        residual,
        elapsed_model_time: dp.t,
        converged: converged && residual < tol,
        tol,
        steps: dp.accepted,
    })
}

/// Newton iterations with a central-difference Jacobian. Returns `None` if
/// the refined point drifts away from the start (another branch).
fn newton_polish(
    system: &PumpSystem,
    start: &PumpState,
    amplitude_scale: f64,
) -> Option<(PumpState, f64)> {
    let n = match system.circuit.topology {
        Topology::Engineered => 4,
        Topology::Bare => 2,
    };
    // Bare circuits keep α_J in slots 2..4.
    let offset = 4 - n;
    let y0 = start.to_real();
    let mut y = y0;
    let mut residual = system.residual(start);
    for _ in 0..8 {
        let f = system.real_rhs(&y);
        let mut jac = CMatrix::zeros(n);
        for j in 0..n {
            let h = 1e-7 * y[offset + j].abs().max(amplitude_scale);
            let mut yp = y;
            let mut ym = y;
            yp[offset + j] += h;
            ym[offset + j] -= h;
            let fp = system.real_rhs(&yp);
            let fm = system.real_rhs(&ym);
            for i in 0..n {
                jac[(i, j)] = Complex64::new((fp[offset + i] - fm[offset + i]) / (2.0 * h), 0.0);
            }
        }
        let rhs: Vec<Complex64> = (0..n)
            .map(|i| Complex64::new(-f[offset + i], 0.0))
            .collect();
        let step = Lu::factor(&jac).ok()?.solve(&rhs);
        let mut trial = y;
        for i in 0..n {
            trial[offset + i] += step[i].re;
        }
        let trial_residual = system.residual(&PumpState::from_real(&trial));
        if !(trial_residual < residual) {
            break;
        }
        y = trial;
        residual = trial_residual;
    }
    let moved = y
        .iter()
        .zip(&y0)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt();
    let size = y0.iter().map(|a| a * a).sum::<f64>().sqrt();
    if moved > 1e-3 * size.max(amplitude_scale) {
        return None;
    }
    Some((PumpState::from_real(&y), residual))
}
