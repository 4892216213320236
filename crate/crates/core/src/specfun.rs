//! Bessel functions of the first kind, orders 0 to 2, on x >= 0.
//!
//! Pumped junctions enter the dynamics through `J₁` (pump equations) and
//! `J₀`, `J₂` (linearized fluctuations). Evaluation uses the power series
//! for small arguments, Miller's backward recurrence normalized by
//! `J₀ + 2ΣJ₂ₖ = 1` for moderate ones, and the Hankel expansion far out.
//!
//! # Quartic truncation
//!
//! [`bessel_j_quartic`] keeps only the terms that survive when the cosine
//! potential is expanded to fourth order:
//!
//! ```text
//! J₀(x) → 1 − x²/4      J₁(x) → x/2 − x³/16      J₂(x) → x²/8
//! ```
//!
//! With `A e^{iφ} = 2cα` the pump force `J₁(A)e^{iφ}` becomes
//! `cα − c³|α|²α/2`, the familiar Kerr term, and its linearization
//! `(J₀ δ − J₂ e^{2iφ} δ̄)/2` reproduces the frequency pull `−2K|α|²` and
//! the two-photon coupling `−Kα²` of lowest-order JPA theory.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Order of a Bessel function appearing in the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BesselOrder {
    J0,
    J1,
    J2,
}

impl BesselOrder {
    pub const ALL: [BesselOrder; 3] = [BesselOrder::J0, BesselOrder::J1, BesselOrder::J2];

    pub fn index(self) -> usize {
        match self {
            BesselOrder::J0 => 0,
            BesselOrder::J1 => 1,
            BesselOrder::J2 => 2,
        }
    }
}

fn check_domain(x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(Error::BesselDomain { x })
    }
}

/// `J_n(x)` for n in {0, 1, 2}.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(bessel_j012(x)[order.index()])
}

/// Quartic-model stand-in for `J_n(x)`.
pub fn bessel_j_quartic(order: BesselOrder, x: f64) -> Result<f64> {
    check_domain(x)?;
    Ok(quartic_j012(x)[order.index()])
}

/// `[J₀, J₁, J₂]` at `x`. No domain check; NaN in gives NaN out.
pub(crate) fn bessel_j012(x: f64) -> [f64; 3] {
    if x.is_nan() {
        return [f64::NAN; 3];
    }
    if x == 0.0 {
        [1.0, 0.0, 0.0]
    } else if x < SERIES_LIMIT {
        series_j012(x)
    } else if x < ASYMPTOTIC_LIMIT {
        miller_j012(x)
    } else {
        hankel_j012(x)
    }
}

pub(crate) fn quartic_j012(x: f64) -> [f64; 3] {
    let x2 = x * x;
    [1.0 - x2 / 4.0, x / 2.0 - x * x2 / 16.0, x2 / 8.0]
}

const SERIES_LIMIT: f64 = 2.0;
const ASYMPTOTIC_LIMIT: f64 = 1000.0;

fn series(order: u32, x: f64) -> f64 {
    let q = -0.25 * x * x;
    let n = order as f64;
    // (x/2)^n / n!
    let mut term = (0.5 * x).powi(order as i32);
    for k in 1..=order {
        term /= k as f64;
    }
    let mut sum = term;
    for k in 1..200 {
        let k = k as f64;
        term *= q / (k * (k + n));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

fn series_j012(x: f64) -> [f64; 3] {
    [series(0, x), series(1, x), series(2, x)]
}

fn miller_j012(x: f64) -> [f64; 3] {
    // Even start index well above x so the seeded tail has decayed away.
    let mut start = (1.2 * x + 40.0) as usize;
    start += start % 2;
    let two_over_x = 2.0 / x;
    let (mut next, mut cur) = (0.0_f64, 1e-300_f64);
    let mut norm = 0.0;
    let mut out = [0.0; 3];
    for k in (1..=start).rev() {
        let prev = k as f64 * two_over_x * cur - next;
        next = cur;
        cur = prev;
        // `cur` is now J_{k-1} up to scale.
        let idx = k - 1;
        if idx % 2 == 0 && idx > 0 {
            norm += 2.0 * cur;
        }
        if idx <= 2 {
            out[idx] = cur;
        }
        if cur.abs() > 1e250 {
            cur *= 1e-250;
            next *= 1e-250;
            norm *= 1e-250;
            for v in out.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    norm += out[0];
    [out[0] / norm, out[1] / norm, out[2] / norm]
}

fn hankel(order: u32, x: f64) -> f64 {
    let mu = 4.0 * (order * order) as f64;
    let eight_x = 8.0 * x;
    let (mut p, mut q) = (1.0, 0.0);
    let mut term = 1.0;
    for k in 1..12 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * eight_x);
        if k % 2 == 1 {
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            q += sign * term;
        } else {
            let sign = if (k / 2) % 2 == 1 { -1.0 } else { 1.0 };
            p += sign * term;
        }
    }
    let chi = x - (order as f64 / 2.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

fn hankel_j012(x: f64) -> [f64; 3] {
    [hankel(0, x), hankel(1, x), hankel(2, x)]
}
