//! Dormand–Prince 5(4) with FSAL and a standard PI-free step controller.

/// Step-size control settings.
#[derive(Debug, Clone, Copy)]
pub struct StepControl {
    pub rtol: f64,
    /// Absolute tolerance per component.
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Fifth-order weights minus the embedded fourth-order ones.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Adaptive integrator state for an autonomous system `y' = f(y)`.
pub struct DormandPrince<const N: usize> {
    control: StepControl,
    pub t: f64,
    pub y: [f64; N],
    /// `f(y)` at the current point (first-same-as-last).
    pub dy: [f64; N],
    h: f64,
    pub accepted: u64,
    pub rejected: u64,
}

fn axpy<const N: usize>(y: &[f64; N], h: f64, terms: &[(f64, &[f64; N])]) -> [f64; N] {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let s: f64 = terms.iter().map(|(c, k)| c * k[i]).sum();
        *o += h * s;
    }
    out
}

impl<const N: usize> DormandPrince<N> {
    pub fn new<F: FnMut(&[f64; N]) -> [f64; N]>(
        f: &mut F,
        y0: [f64; N],
        control: StepControl,
    ) -> Self {
        let dy = f(&y0);
        DormandPrince {
            control,
            t: 0.0,
            y: y0,
            dy,
            h: control.h_init,
            accepted: 0,
            rejected: 0,
        }
    }

    /// Take one accepted step, retrying with smaller `h` as needed.
    /// Returns `false` if the state went non-finite or `h` underflowed.
    pub fn step<F: FnMut(&[f64; N]) -> [f64; N]>(&mut self, f: &mut F) -> bool {
        let mut retries = 0;
        loop {
            let h = self.h;
            if !(h > 0.0) || self.t + h == self.t {
                return false;
            }
            let y = &self.y;
            let k1 = self.dy;
            let k2 = f(&axpy(y, h, &[(A21, &k1)]));
            let k3 = f(&axpy(y, h, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(&axpy(y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
            let k5 = f(&axpy(
                y,
                h,
                &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)],
            ));
            let k6 = f(&axpy(
                y,
                h,
                &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)],
            ));
            let y_new = axpy(
                y,
                h,
                &[(A71, &k1), (A73, &k3), (A74, &k4), (A75, &k5), (A76, &k6)],
            );
            let k7 = f(&y_new);

            let mut err = 0.0;
            for i in 0..N {
                let e = h
                    * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
                let scale = self.control.atol + self.control.rtol * y[i].abs().max(y_new[i].abs());
                err += (e / scale).powi(2);
            }
            let err = (err / N as f64).sqrt();
            if !err.is_finite() {
                self.h *= 0.1;
                self.rejected += 1;
                retries += 1;
                if retries > 50 {
                    return false;
                }
                continue;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            if err <= 1.0 {
                self.t += h;
                self.y = y_new;
                self.dy = k7;
                self.h = (h * factor).min(self.control.h_max);
                self.accepted += 1;
                return true;
            }
            self.h = h * factor.min(1.0);
            self.rejected += 1;
        }
    }
}
