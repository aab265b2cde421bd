//! Experiment configuration: defaults that reproduce the reference
//! 100 GHz / 512-antenna study, overridable from a flat `key=value` file.

use std::fs;
use std::path::{Path, PathBuf};

use xlsparse_core::{Error, LayoutSpec, Result, SPEED_OF_LIGHT_M_PER_S};

use crate::Failure;

/// Layout set evaluated by the sweep commands when no config overrides it:
/// the dense baseline plus the four 512-element multi-subarray families
/// (8 subarrays of 64 elements each; the coprime variant reaches 8
/// subarrays via the pair (2, 5)).
const DEFAULT_LAYOUTS: [&str; 5] = [
    "dua:512",
    "wsms:8x64",
    "nms:8x64",
    "cms:2/5x64",
    "nrms:8x64",
];

/// Full experiment parameter set shared by all subcommands.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    /// Carrier frequency [Hz].
    pub frequency_hz: f64,
    /// Layouts evaluated by `crb-sweep` and `rank`.
    pub layouts: Vec<LayoutSpec>,
    /// Source ranges for `crb-sweep` [m].
    pub ranges_m: Vec<f64>,
    /// Per-snapshot SNR [dB].
    pub snr_db: f64,
    /// Number of coherent snapshots.
    pub snapshots: u64,
    /// Transmit/receive plane separation for `rank` [m].
    pub separation_m: f64,
    /// Normalized singular-value cutoff for effective rank, in (0, 1].
    pub sv_threshold: f64,
    /// Artifact directory from the config file (flag and environment
    /// overrides are resolved by the caller).
    pub output_dir: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            frequency_hz: 100e9,
            layouts: DEFAULT_LAYOUTS
                .iter()
                .map(|s| LayoutSpec::parse(s).expect("default layout specs are valid"))
                .collect(),
            ranges_m: vec![20.0, 40.0, 60.0, 80.0, 100.0, 120.0],
            snr_db: 0.0,
            snapshots: 1,
            separation_m: 100.0,
            sv_threshold: 1e-3,
            output_dir: None,
        }
    }
}

impl ExperimentConfig {
    /// Defaults, optionally overridden by a config file.
    pub fn load(path: Option<&Path>) -> std::result::Result<Self, Failure> {
        let mut config = ExperimentConfig::default();
        if let Some(path) = path {
            let text = fs::read_to_string(path).map_err(|source| Failure::Io {
                path: path.to_path_buf(),
                source,
            })?;
            config.apply(&text)?;
        }
        config.validate()?;
        Ok(config)
    }

    /// Applies `key=value` lines; `#` starts a comment, blank lines are
    /// skipped, later lines win.
    fn apply(&mut self, text: &str) -> Result<()> {
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let lineno = index + 1;
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter {
                    detail: format!("config line {lineno}: expected 'key=value', got '{line}'"),
                })?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "frequency_hz" => self.frequency_hz = parse_f64(key, value, lineno)?,
                "layouts" => {
                    self.layouts = value
                        .split(',')
                        .map(|s| LayoutSpec::parse(s.trim()))
                        .collect::<Result<Vec<_>>>()?;
                }
                "ranges_m" => {
                    self.ranges_m = value
                        .split(',')
                        .map(|s| parse_f64(key, s.trim(), lineno))
                        .collect::<Result<Vec<_>>>()?;
                }
                "snr_db" => self.snr_db = parse_f64(key, value, lineno)?,
                "snapshots" => self.snapshots = parse_u64(key, value, lineno)?,
                "separation_m" => self.separation_m = parse_f64(key, value, lineno)?,
                "sv_threshold" => self.sv_threshold = parse_f64(key, value, lineno)?,
                "output_dir" => self.output_dir = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::InvalidParameter {
                        detail: format!("config line {lineno}: unknown key '{other}'"),
                    });
                }
            }
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        let bad = |detail: String| Err(Error::InvalidParameter { detail });
        if !(self.frequency_hz.is_finite() && self.frequency_hz > 0.0) {
            return bad(format!(
                "frequency_hz must be positive and finite, got {}",
                self.frequency_hz
            ));
        }
        if self.layouts.is_empty() {
            return bad("layouts must name at least one layout".to_string());
        }
        if self.ranges_m.is_empty() {
            return bad("ranges_m must contain at least one range".to_string());
        }
        if let Some(r) = self.ranges_m.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
            return bad(format!(
                "ranges_m entries must be positive and finite, got {r}"
            ));
        }
        if self.snapshots < 1 {
            return bad("snapshots must be at least 1".to_string());
        }
        if !self.snr_db.is_finite() {
            return bad(format!("snr_db must be finite, got {}", self.snr_db));
        }
        if !(self.separation_m.is_finite() && self.separation_m > 0.0) {
            return bad(format!(
                "separation_m must be positive and finite, got {}",
                self.separation_m
            ));
        }
        if !(self.sv_threshold.is_finite() && self.sv_threshold > 0.0 && self.sv_threshold <= 1.0) {
            return bad(format!(
                "sv_threshold must lie in (0, 1], got {}",
                self.sv_threshold
            ));
        }
        Ok(())
    }

    /// Carrier wavelength [m].
    pub fn wavelength_m(&self) -> f64 {
        SPEED_OF_LIGHT_M_PER_S / self.frequency_hz
    }
}

fn parse_f64(key: &str, value: &str, lineno: usize) -> Result<f64> {
    value.parse::<f64>().map_err(|_| Error::InvalidParameter {
        detail: format!("config line {lineno}: {key} must be a number, got '{value}'"),
    })
}

fn parse_u64(key: &str, value: &str, lineno: usize) -> Result<u64> {
    value.parse::<u64>().map_err(|_| Error::InvalidParameter {
        detail: format!(
            "config line {lineno}: {key} must be a non-negative integer, got '{value}'"
        ),
    })
}
