//! JSON run configuration.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::model::{make_scenario, Scenario, ScenarioConfig};
use crate::sweep::{GridScale, DEFAULT_SAMPLES_PER_PERIOD, MIN_SAMPLES_PER_PERIOD};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid configuration at `{path}`: {message}")]
    Validation { path: String, message: String },
    #[error("configuration has no `{0}` block, which this command needs")]
    MissingBlock(&'static str),
}

impl ConfigError {
    fn invalid(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError::Validation {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum ScaleName {
    Linear,
    Log,
}

impl From<ScaleName> for GridScale {
    fn from(s: ScaleName) -> Self {
        match s {
            ScaleName::Linear => GridScale::Linear,
            ScaleName::Log => GridScale::Log,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepBlock {
    pub omega_min: f64,
    pub omega_max: f64,
    pub n_points: usize,
    pub scale: GridScale,
    pub samples_per_period: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TraceBlock {
    pub t_start: f64,
    pub t_end: f64,
    pub n_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectrumBlock {
    pub n_samples: usize,
    pub n_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityBlock {
    pub g: f64,
    /// Source-to-receiver height; the scenario's `L` when omitted.
    pub span: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LedgerBlock {
    pub n_photons: u64,
    #[serde(rename = "M_frame")]
    pub frame_mass: f64,
    pub epsilon: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    omega_min: f64,
    omega_max: f64,
    n_points: usize,
    #[serde(default = "default_scale")]
    scale: ScaleName,
    #[serde(default)]
    samples_per_period: Option<usize>,
}

fn default_scale() -> ScaleName {
    ScaleName::Linear
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGravity {
    g: f64,
    #[serde(rename = "L", default)]
    span: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRunConfig {
    scenario: ScenarioConfig,
    sweep: Option<RawSweep>,
    trace: Option<TraceBlock>,
    spectrum: Option<SpectrumBlock>,
    gravity: Option<RawGravity>,
    ledger: Option<LedgerBlock>,
}

/// A validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub sweep: Option<SweepBlock>,
    pub trace: Option<TraceBlock>,
    pub spectrum: Option<SpectrumBlock>,
    pub gravity: Option<GravityBlock>,
    pub ledger: Option<LedgerBlock>,
}

impl RunConfig {
    pub fn require_sweep(&self) -> Result<&SweepBlock, ConfigError> {
        self.sweep
            .as_ref()
            .ok_or(ConfigError::MissingBlock("sweep"))
    }

    pub fn require_trace(&self) -> Result<&TraceBlock, ConfigError> {
        self.trace
            .as_ref()
            .ok_or(ConfigError::MissingBlock("trace"))
    }

    pub fn require_spectrum(&self) -> Result<&SpectrumBlock, ConfigError> {
        self.spectrum
            .as_ref()
            .ok_or(ConfigError::MissingBlock("spectrum"))
    }

    pub fn require_gravity(&self) -> Result<&GravityBlock, ConfigError> {
        self.gravity
            .as_ref()
            .ok_or(ConfigError::MissingBlock("gravity"))
    }

    pub fn require_ledger(&self) -> Result<&LedgerBlock, ConfigError> {
        self.ledger
            .as_ref()
            .ok_or(ConfigError::MissingBlock("ledger"))
    }
}

pub fn load_config(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw: RawRunConfig = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            ConfigError::Parse {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            }
        } else {
            ConfigError::invalid(path, inner.to_string())
        }
    })?;
    de.end().map_err(|e| ConfigError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    validate(raw)
}

fn positive(path: &str, v: f64) -> Result<(), ConfigError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::invalid(
            path,
            format!("must be positive, got {v}"),
        ))
    }
}

fn validate(raw: RawRunConfig) -> Result<RunConfig, ConfigError> {
    let scenario = make_scenario(&raw.scenario)
        .map_err(|e| ConfigError::invalid(format!("scenario.{}", e.field()), e.to_string()))?;

    let sweep = raw
        .sweep
        .map(|s| {
            positive("sweep.omega_min", s.omega_min)?;
            positive("sweep.omega_max", s.omega_max)?;
            if s.omega_max < s.omega_min {
                return Err(ConfigError::invalid(
                    "sweep.omega_max",
                    "must not be below omega_min",
                ));
            }
            if s.n_points == 0 {
                return Err(ConfigError::invalid("sweep.n_points", "must be at least 1"));
            }
            if s.n_points > 1 && s.omega_max == s.omega_min {
                return Err(ConfigError::invalid("sweep.omega_max", "range is empty"));
            }
            let samples_per_period = s.samples_per_period.unwrap_or(DEFAULT_SAMPLES_PER_PERIOD);
            if samples_per_period < MIN_SAMPLES_PER_PERIOD {
                return Err(ConfigError::invalid(
                    "sweep.samples_per_period",
                    format!("must be at least {MIN_SAMPLES_PER_PERIOD}"),
                ));
            }
            Ok(SweepBlock {
                omega_min: s.omega_min,
                omega_max: s.omega_max,
                n_points: s.n_points,
                scale: s.scale.into(),
                samples_per_period,
            })
        })
        .transpose()?;

    if let Some(t) = &raw.trace {
        if !(t.t_start.is_finite() && t.t_end.is_finite() && t.t_end > t.t_start) {
            return Err(ConfigError::invalid("trace.t_end", "must be after t_start"));
        }
        if t.n_samples < 2 {
            return Err(ConfigError::invalid(
                "trace.n_samples",
                "must be at least 2",
            ));
        }
    }

    if let Some(sp) = &raw.spectrum {
        if sp.n_samples < 8 || !sp.n_samples.is_power_of_two() {
            return Err(ConfigError::invalid(
                "spectrum.n_samples",
                "must be a power of two, at least 8",
            ));
        }
        if sp.n_max == 0 || 2 * sp.n_max >= sp.n_samples {
            return Err(ConfigError::invalid(
                "spectrum.n_max",
                "must be at least 1 and below half of n_samples",
            ));
        }
    }

    let gravity = raw
        .gravity
        .map(|g| {
            if !(g.g >= 0.0 && g.g.is_finite()) {
                return Err(ConfigError::invalid("gravity.g", "must be non-negative"));
            }
            let span = g.span.unwrap_or(scenario.span());
            positive("gravity.L", span)?;
            Ok(GravityBlock { g: g.g, span })
        })
        .transpose()?;

    if let Some(l) = &raw.ledger {
        positive("ledger.M_frame", l.frame_mass)?;
        if !(0.0..1.0).contains(&l.epsilon) {
            return Err(ConfigError::invalid("ledger.epsilon", "must lie in [0, 1)"));
        }
    }

    Ok(RunConfig {
        scenario,
        sweep,
        trace: raw.trace,
        spectrum: raw.spectrum,
        gravity,
        ledger: raw.ledger,
    })
}
