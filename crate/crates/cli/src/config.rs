//! Run configuration: a flat TOML document, overridden by command-line flags.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use qreality::scenarios::{DetectorArraySpec, ScatteringParams};
use qreality::{Dims, Tolerances, C64};
use serde::{Deserialize, Serialize};

use crate::error::ConfigError;

pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Structured,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "structured" => Ok(Format::Structured),
            other => Err(format!("unknown format `{other}` (expected csv or structured)")),
        }
    }
}

/// Initial state for `epsilon_sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SweepState {
    /// `|+><+|` monitored in `sigma_z`.
    #[default]
    Plus,
    /// Seeded random state and observable on `dims`.
    Random,
}

/// Either a real number or `[re, im]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Amplitude {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Amplitude> for C64 {
    fn from(a: Amplitude) -> C64 {
        match a {
            Amplitude::Real(re) => C64::new(re, 0.0),
            Amplitude::Complex([re, im]) => C64::new(re, im),
        }
    }
}

/// Keys accepted in a config file. Every key is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub scenario: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub dims: Option<Vec<usize>>,
    pub epsilon: Option<Vec<f64>>,
    pub tolerances: Option<Tolerances>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub outcome: Option<usize>,
    pub xi: Option<f64>,
    pub velocity_ratio: Option<f64>,
    pub n_sites: Option<usize>,
    pub packet_width: Option<f64>,
    pub shift: Option<usize>,
    pub alpha: Option<Amplitude>,
    pub beta: Option<Amplitude>,
    pub sweep_state: Option<SweepState>,
    /// Appends one deliberately failing row, for exercising exit codes.
    pub inject_failure: Option<bool>,
}

impl FileConfig {
    pub fn parse(text: &str, origin: &Path) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: origin.to_path_buf(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
            path: path.to_path_buf(),
            message: e.to_string(),
        })?;
        Self::parse(&text, path)
    }
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: String,
    pub seed: u64,
    pub samples: usize,
    pub dims: Dims,
    /// Explicit intensity grid; suites draw intensities at random when empty.
    pub epsilon: Vec<f64>,
    pub tolerances: Tolerances,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub outcome: usize,
    pub scattering: ScatteringParams,
    pub detector: DetectorArraySpec,
    pub sweep_state: SweepState,
    pub inject_failure: bool,
}

impl RunConfig {
    /// Defaults for `scenario`, with everything else unset.
    pub fn for_scenario(scenario: &str) -> Self {
        RunConfig {
            scenario: scenario.to_string(),
            seed: DEFAULT_SEED,
            samples: DEFAULT_SAMPLES,
            dims: Dims::qubits(2),
            epsilon: Vec::new(),
            tolerances: Tolerances::DEFAULT,
            output: None,
            format: Format::Csv,
            outcome: 0,
            scattering: ScatteringParams {
                xi: 1.0,
                velocity_ratio: 10.0,
            },
            detector: DetectorArraySpec::default(),
            sweep_state: SweepState::Plus,
            inject_failure: false,
        }
    }

    pub fn resolve(file: FileConfig) -> Result<Self, ConfigError> {
        let scenario = file.scenario.ok_or(ConfigError::Missing("scenario"))?;
        let mut c = RunConfig::for_scenario(&scenario);
        if let Some(seed) = file.seed {
            c.seed = seed;
        }
        if let Some(samples) = file.samples {
            c.samples = samples;
        }
        if let Some(dims) = file.dims {
            c.dims = Dims::new(dims).map_err(|e| ConfigError::invalid("dims", e))?;
        }
        if let Some(eps) = file.epsilon {
            c.epsilon = eps;
        }
        if let Some(t) = file.tolerances {
            c.tolerances = t;
        }
        c.output = file.output;
        c.format = file.format.unwrap_or_default();
        c.outcome = file.outcome.unwrap_or(0);
        if let Some(xi) = file.xi {
            c.scattering.xi = xi;
        }
        if let Some(r) = file.velocity_ratio {
            c.scattering.velocity_ratio = r;
        }
        let d = &mut c.detector;
        if let Some(n) = file.n_sites {
            d.n_sites = n;
        }
        if let Some(w) = file.packet_width {
            d.packet_width_sites = w;
        }
        if let Some(s) = file.shift {
            d.shift_sites = s;
        }
        if let Some(a) = file.alpha {
            d.alpha = a.into();
        }
        if let Some(b) = file.beta {
            d.beta = b.into();
        }
        c.sweep_state = file.sweep_state.unwrap_or_default();
        c.inject_failure = file.inject_failure.unwrap_or(false);
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.samples == 0 {
            return Err(ConfigError::invalid("samples", "must be at least 1"));
        }
        if let Some(bad) = self.epsilon.iter().find(|e| !(0.0..=1.0).contains(*e)) {
            return Err(ConfigError::invalid("epsilon", format!("{bad} is outside [0, 1]")));
        }
        self.tolerances
            .validate()
            .map_err(|e| ConfigError::invalid("tolerances", e))?;
        ScatteringParams::new(self.scattering.xi, self.scattering.velocity_ratio)
            .map_err(|e| ConfigError::invalid("xi/velocity_ratio", e))?;
        self.detector
            .validate(&self.tolerances)
            .map_err(|e| ConfigError::invalid("detector", e))?;
        Ok(())
    }
}

/// Parses `KEY=VAL` for a tolerance override.
pub fn parse_tolerance(s: &str) -> Result<(String, f64), String> {
    let (key, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected KEY=VAL, got `{s}`"))?;
    let key = key.trim();
    if !Tolerances::KEYS.contains(&key) {
        return Err(format!(
            "unknown tolerance `{key}` (known: {})",
            Tolerances::KEYS.join(", ")
        ));
    }
    let value = value
        .trim()
        .parse::<f64>()
        .map_err(|e| format!("bad value for `{key}`: {e}"))?;
    Ok((key.to_string(), value))
}
