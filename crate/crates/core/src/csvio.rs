//! CSV tables written and read by the command-line tool.

use std::path::Path;

use crate::constants::{rad_s_to_ghz, rad_s_to_hz};
use crate::error::{Error, Result};
use crate::scattering::GainProfile;
use crate::sweep::SweepResult;

/// 17 significant digits: enough to round-trip any `f64`.
pub fn fmt_num(x: f64) -> String {
    format!("{x:.16e}")
}

pub const GAIN_COLUMNS: [&str; 8] = [
    "delta_hz",
    "signal_freq_hz",
    "gain_db",
    "s_ss_re",
    "s_ss_im",
    "s_si_re",
    "s_si_im",
    "symplectic_residual",
];

pub const SWEEP_COLUMNS: [&str; 6] = [
    "pump_power_dbm",
    "pump_freq_ghz",
    "converged",
    "peak_gain_db",
    "bw_3db_mhz",
    "threshold_flag",
];

fn header(cols: &[&str]) -> String {
    let mut s = cols.join(",");
    s.push('\n');
    s
}

/// Singular points are written with `NaN` in every derived column.
pub fn gain_csv(profile: &GainProfile) -> String {
    let mut out = header(&GAIN_COLUMNS);
    for e in &profile.entries {
        let nan = num_complex::Complex64::new(f64::NAN, f64::NAN);
        let (ss, si) = e.s_params.map_or((nan, nan), |s| (s.s_ss, s.s_si));
        let cells = [
            rad_s_to_hz(e.delta),
            rad_s_to_hz(e.signal_freq),
            e.gain_db,
            ss.re,
            ss.im,
            si.re,
            si.im,
            e.symplectic_residual,
        ];
        let row: Vec<String> = cells.iter().map(|&v| fmt_num(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Unconverged points and unresolved bandwidths leave their cells empty.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = header(&SWEEP_COLUMNS);
    for r in &result.rows {
        let peak = r
            .metrics
            .map(|m| fmt_num(m.peak_gain_db))
            .unwrap_or_default();
        let bw = r
            .metrics
            .and_then(|m| m.bandwidth.width())
            .map(|w| fmt_num(rad_s_to_hz(w) / 1e6))
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt_num(r.power_dbm),
            fmt_num(rad_s_to_ghz(r.pump_freq)),
            r.converged,
            peak,
            bw,
            r.threshold_flag
        ));
    }
    out
}

/// `(signal_freq_hz, gain_db)` pairs from a gain CSV.
pub fn read_gain_csv(path: &Path) -> Result<Vec<(f64, f64)>> {
    let malformed = |line: u64, message: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line,
        message,
    };
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::Reader::from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .clone();
    if headers.iter().ne(GAIN_COLUMNS) {
        return Err(malformed(
            1,
            format!("expected columns {}", GAIN_COLUMNS.join(",")),
        ));
    }
    let mut out = Vec::new();
    for row in reader.records() {
        let row =
            row.map_err(|e| malformed(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        let line = row.position().map_or(0, |p| p.line());
        let field = |i: usize| -> Result<f64> {
            let text = &row[i];
            text.parse().map_err(|_| {
                malformed(
                    line,
                    format!("field `{}`: cannot parse {text:?}", GAIN_COLUMNS[i]),
                )
            })
        };
        out.push((field(1)?, field(2)?));
    }
    Ok(out)
}
