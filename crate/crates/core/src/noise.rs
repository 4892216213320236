//! Added noise photons from pump-on/pump-off SNR measurements.
//!
//! `n_add = T_HEMT·(SNR_off/SNR_on − L/G)·k_B/(ħω)`, with `L ≥ 1` the linear
//! attenuation between the amplifier and the following stage and `G` the
//! linear gain.

use std::io::Read;
use std::path::Path;

use crate::constants::{db_to_linear, ghz_to_rad_s, rad_s_to_ghz, PhysicalConstants};
use crate::csvio::fmt_num;
use crate::error::{Error, Result};

/// Half a photon: the minimum for phase-preserving amplification.
pub const STANDARD_QUANTUM_LIMIT: f64 = 0.5;

/// One measured frequency point, all ratios linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseRecord {
    /// Signal angular frequency, rad/s.
    pub omega: f64,
    pub snr_on: f64,
    pub snr_off: f64,
    pub gain: f64,
    /// Attenuation factor, ≥ 1.
    pub loss: f64,
    /// Noise temperature of the following stage, K.
    pub t_hemt: f64,
}

impl NoiseRecord {
    /// Returns the name of the first invalid field and why.
    pub fn invalid_field(&self) -> Option<(&'static str, &'static str)> {
        let positive = [
            ("omega", self.omega),
            ("snr_on", self.snr_on),
            ("snr_off", self.snr_off),
            ("gain", self.gain),
            ("loss", self.loss),
            ("t_hemt", self.t_hemt),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Some((name, "must be finite and positive"));
            }
        }
        if self.gain <= 1.0 {
            return Some(("gain", "must exceed 1 (0 dB)"));
        }
        if self.loss < 1.0 {
            return Some(("loss", "attenuation must be at least 1 (0 dB)"));
        }
        None
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseEstimate {
    pub omega: f64,
    /// Added noise, photons. Negative values are kept as measured.
    pub n_add: f64,
}

impl NoiseEstimate {
    pub fn below_sql(&self) -> bool {
        self.n_add < STANDARD_QUANTUM_LIMIT
    }

    /// Physically impossible; indicates measurement scatter.
    pub fn is_negative(&self) -> bool {
        self.n_add < 0.0
    }
}

pub fn n_add(record: &NoiseRecord, consts: &PhysicalConstants) -> Result<NoiseEstimate> {
    if let Some((field, reason)) = record.invalid_field() {
        let value = match field {
            "omega" => record.omega,
            "snr_on" => record.snr_on,
            "snr_off" => record.snr_off,
            "gain" => record.gain,
            "loss" => record.loss,
            _ => record.t_hemt,
        };
        return Err(Error::InvalidParameter {
            field,
            value,
            reason,
        });
    }
    let bracket = record.snr_off / record.snr_on - record.loss / record.gain;
    let n = record.t_hemt * bracket * consts.kb / (consts.hbar * record.omega);
    Ok(NoiseEstimate {
        omega: record.omega,
        n_add: n,
    })
}

const COLUMNS: [&str; 6] = [
    "freq_ghz",
    "snr_on_db",
    "snr_off_db",
    "gain_db",
    "loss_db",
    "t_hemt_k",
];

/// Read measurement rows; dB columns are converted to linear ratios.
pub fn ingest_noise_csv(path: &Path) -> Result<Vec<NoiseRecord>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_noise_csv(file, path)
}

/// As [`ingest_noise_csv`] from any reader; `path` only labels errors.
/// Line numbers count the header as line 1.
pub fn parse_noise_csv(input: impl Read, path: &Path) -> Result<Vec<NoiseRecord>> {
    let malformed = |line: u64, message: String| Error::MalformedRow {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(input);
    let headers = reader
        .headers()
        .map_err(|e| malformed(1, e.to_string()))?
        .clone();
    let mut index = [0usize; 6];
    for (slot, name) in index.iter_mut().zip(COLUMNS) {
        *slot = headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| malformed(1, format!("missing column `{name}`")))?;
    }

    let mut records = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            malformed(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let mut values = [0.0; 6];
        for ((v, &i), name) in values.iter_mut().zip(&index).zip(COLUMNS) {
            let text = row.get(i).unwrap_or("");
            *v = text
                .parse::<f64>()
                .map_err(|_| malformed(line, format!("field `{name}`: cannot parse {text:?}")))?;
        }
        let [freq_ghz, snr_on_db, snr_off_db, gain_db, loss_db, t_hemt] = values;
        let record = NoiseRecord {
            omega: ghz_to_rad_s(freq_ghz),
            snr_on: db_to_linear(snr_on_db),
            snr_off: db_to_linear(snr_off_db),
            gain: db_to_linear(gain_db),
            loss: db_to_linear(loss_db),
            t_hemt,
        };
        if let Some((field, reason)) = record.invalid_field() {
            let column = match field {
                "omega" => "freq_ghz",
                "snr_on" => "snr_on_db",
                "snr_off" => "snr_off_db",
                "gain" => "gain_db",
                "loss" => "loss_db",
                _ => "t_hemt_k",
            };
            return Err(malformed(line, format!("field `{column}`: {reason}")));
        }
        records.push(record);
    }
    Ok(records)
}

/// `freq_ghz,n_add_photons,below_sql`.
pub fn noise_csv(estimates: &[NoiseEstimate]) -> String {
    let mut out = String::from("freq_ghz,n_add_photons,below_sql\n");
    for e in estimates {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_num(rad_s_to_ghz(e.omega)),
            fmt_num(e.n_add),
            e.below_sql()
        ));
    }
    out
}
