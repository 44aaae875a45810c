//! Platform trajectories and validated scenario geometry.
//!
//! Geometry along the propagation axis: the source S sits at the origin and
//! the receiver R at distance `L`. At rest the first mirror is `d0` from the
//! source and the second mirror `D` closer to it. The photon runs
//! S → mirror 1 → mirror 2 → R, so the static path is `L + 2D`.
//!
//! The platform displacement `s(t)` returned by [`Trajectory::position`] is
//! measured along the platform's direction of motion, which points from the
//! first mirror toward the second. Mirror positions relative to the source
//! are therefore `d0 − s(t)` and `d0 − D − s(t)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constants::C;

/// Largest mirror speed allowed, as a fraction of `c`. Keeps every
/// retarded-time map a contraction.
pub const MAX_SPEED_RATIO: f64 = 0.5;

/// Largest free-fall acceleration accepted, m/s².
pub const MAX_FREE_FALL: f64 = 1e3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("geometry error in `{field}`: {message}")]
    Geometry {
        field: &'static str,
        message: String,
    },
    #[error("mirror speed {speed_ratio:e}·c in `{field}` is not below {MAX_SPEED_RATIO}·c")]
    Subluminal {
        field: &'static str,
        speed_ratio: f64,
    },
    #[error("invalid value for `{field}`: {message}")]
    Value {
        field: &'static str,
        message: String,
    },
}

impl ModelError {
    /// Name of the offending field, as spelled in scenario configuration.
    pub fn field(&self) -> &'static str {
        match self {
            ModelError::Geometry { field, .. }
            | ModelError::Subluminal { field, .. }
            | ModelError::Value { field, .. } => field,
        }
    }
}

/// Motion of the rigid mirror platform.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Trajectory {
    Static,
    Uniform {
        #[serde(rename = "V")]
        speed: f64,
    },
    Harmonic {
        #[serde(rename = "x0")]
        amplitude: f64,
        #[serde(rename = "Omega")]
        angular_frequency: f64,
        #[serde(rename = "phi0", default)]
        phase: f64,
    },
    FreeFall {
        #[serde(rename = "g")]
        acceleration: f64,
        #[serde(rename = "V0", default)]
        initial_speed: f64,
    },
}

impl Trajectory {
    pub fn harmonic(amplitude: f64, angular_frequency: f64) -> Self {
        Trajectory::Harmonic {
            amplitude,
            angular_frequency,
            phase: 0.0,
        }
    }

    /// Platform displacement at time `t`, m.
    pub fn position(&self, t: f64) -> f64 {
        match *self {
            Trajectory::Static => 0.0,
            Trajectory::Uniform { speed } => speed * t,
            Trajectory::Harmonic {
                amplitude,
                angular_frequency,
                phase,
            } => amplitude * (angular_frequency * t + phase).cos(),
            Trajectory::FreeFall {
                acceleration,
                initial_speed,
            } => initial_speed * t + 0.5 * acceleration * t * t,
        }
    }

    /// Platform velocity at time `t`, m/s. Exact derivative of [`position`](Self::position).
    pub fn velocity(&self, t: f64) -> f64 {
        match *self {
            Trajectory::Static => 0.0,
            Trajectory::Uniform { speed } => speed,
            Trajectory::Harmonic {
                amplitude,
                angular_frequency,
                phase,
            } => -amplitude * angular_frequency * (angular_frequency * t + phase).sin(),
            Trajectory::FreeFall {
                acceleration,
                initial_speed,
            } => initial_speed + acceleration * t,
        }
    }

    /// `position(t + dt) − position(t)`, evaluated without subtracting two
    /// large displacements.
    pub fn displacement_change(&self, t: f64, dt: f64) -> f64 {
        match *self {
            Trajectory::Static => 0.0,
            Trajectory::Uniform { speed } => speed * dt,
            Trajectory::Harmonic {
                amplitude,
                angular_frequency,
                phase,
            } => {
                let mid = angular_frequency * (t + 0.5 * dt) + phase;
                -2.0 * amplitude * mid.sin() * (0.5 * angular_frequency * dt).sin()
            }
            Trajectory::FreeFall {
                acceleration,
                initial_speed,
            } => dt * (initial_speed + acceleration * (t + 0.5 * dt)),
        }
    }

    /// Bound on `|position(t)|` over all time, when one exists.
    pub fn max_abs_displacement(&self) -> Option<f64> {
        match *self {
            Trajectory::Static => Some(0.0),
            Trajectory::Harmonic { amplitude, .. } => Some(amplitude),
            Trajectory::Uniform { .. } | Trajectory::FreeFall { .. } => None,
        }
    }

    /// Oscillation period `2π/Ω` for harmonic motion.
    pub fn period(&self) -> Option<f64> {
        match *self {
            Trajectory::Harmonic {
                angular_frequency, ..
            } => Some(std::f64::consts::TAU / angular_frequency),
            _ => None,
        }
    }

    pub fn angular_frequency(&self) -> Option<f64> {
        match *self {
            Trajectory::Harmonic {
                angular_frequency, ..
            } => Some(angular_frequency),
            _ => None,
        }
    }

    /// The same motion seen with the propagation direction reversed, as
    /// experienced by the counter-propagating beam of a Sagnac loop.
    pub fn mirrored(&self) -> Self {
        match *self {
            Trajectory::Static => Trajectory::Static,
            Trajectory::Uniform { speed } => Trajectory::Uniform { speed: -speed },
            Trajectory::Harmonic {
                amplitude,
                angular_frequency,
                phase,
            } => Trajectory::Harmonic {
                amplitude,
                angular_frequency,
                phase: phase + std::f64::consts::PI,
            },
            Trajectory::FreeFall {
                acceleration,
                initial_speed,
            } => Trajectory::FreeFall {
                acceleration: -acceleration,
                initial_speed: -initial_speed,
            },
        }
    }

    /// Check the trajectory invariants.
    pub fn validate(&self) -> Result<(), ModelError> {
        match *self {
            Trajectory::Static => Ok(()),
            Trajectory::Uniform { speed } => {
                finite("trajectory.V", speed)?;
                subluminal("trajectory.V", speed.abs())
            }
            Trajectory::Harmonic {
                amplitude,
                angular_frequency,
                phase,
            } => {
                finite("trajectory.x0", amplitude)?;
                finite("trajectory.Omega", angular_frequency)?;
                finite("trajectory.phi0", phase)?;
                if amplitude < 0.0 {
                    return Err(value_err("trajectory.x0", "amplitude must be non-negative"));
                }
                if angular_frequency <= 0.0 {
                    return Err(value_err(
                        "trajectory.Omega",
                        "angular frequency must be positive",
                    ));
                }
                subluminal("trajectory.Omega", amplitude * angular_frequency)
            }
            Trajectory::FreeFall {
                acceleration,
                initial_speed,
            } => {
                finite("trajectory.g", acceleration)?;
                finite("trajectory.V0", initial_speed)?;
                if acceleration.abs() >= MAX_FREE_FALL {
                    return Err(value_err(
                        "trajectory.g",
                        format!("|g| must be below {MAX_FREE_FALL} m/s²"),
                    ));
                }
                subluminal("trajectory.V0", initial_speed.abs())
            }
        }
    }
}

/// Free function form of [`Trajectory::position`].
pub fn platform_position(traj: &Trajectory, t: f64) -> f64 {
    traj.position(t)
}

/// Free function form of [`Trajectory::velocity`].
pub fn platform_velocity(traj: &Trajectory, t: f64) -> f64 {
    traj.velocity(t)
}

/// Which form of the mirror-to-mirror leg equation to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LegMode {
    /// `c·t2 = D + x(t+t1) − x(t+t1+t2)`: the actual distance between the
    /// mirrors. Recovers the static path `L + 2D`.
    #[default]
    Geometric,
    /// `c·t2 = d0 − D + x(t+t1+t2)`, the equation exactly as printed in the
    /// original derivation. Static path `L + d0`.
    Literal,
}

/// Raw scenario description, as read from configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(rename = "L")]
    pub span: f64,
    pub d0: f64,
    #[serde(rename = "D")]
    pub separation: f64,
    pub omega0: f64,
    #[serde(rename = "M")]
    pub mass: f64,
    pub trajectory: Trajectory,
    #[serde(default)]
    pub mode: LegMode,
}

/// A validated simulation setup. Immutable once built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    span: f64,
    d0: f64,
    separation: f64,
    omega0: f64,
    mass: f64,
    trajectory: Trajectory,
    mode: LegMode,
}

/// Validate a raw description into a [`Scenario`].
pub fn make_scenario(config: &ScenarioConfig) -> Result<Scenario, ModelError> {
    Scenario::new(config)
}

impl Scenario {
    pub fn new(config: &ScenarioConfig) -> Result<Self, ModelError> {
        let ScenarioConfig {
            span,
            d0,
            separation,
            omega0,
            mass,
            trajectory,
            mode,
        } = *config;

        finite("L", span)?;
        finite("d0", d0)?;
        finite("D", separation)?;
        finite("omega0", omega0)?;
        finite("M", mass)?;

        if separation <= 0.0 {
            return Err(geometry_err("D", "mirror separation must be positive"));
        }
        if d0 <= separation {
            return Err(geometry_err(
                "d0",
                "first mirror must lie beyond the second (d0 > D)",
            ));
        }
        if span <= d0 {
            return Err(geometry_err(
                "L",
                "receiver must lie beyond the first mirror (L > d0)",
            ));
        }
        if omega0 <= 0.0 {
            return Err(value_err(
                "omega0",
                "photon angular frequency must be positive",
            ));
        }
        if mass <= 0.0 {
            return Err(value_err("M", "platform mass must be positive"));
        }

        trajectory.validate()?;

        let reach = trajectory.max_abs_displacement().unwrap_or(0.0);
        if d0 - separation - reach <= 0.0 {
            return Err(geometry_err(
                "d0",
                "second mirror can reach the source (d0 − D − x0 ≤ 0)",
            ));
        }
        if span - d0 + separation - reach <= 0.0 {
            return Err(geometry_err(
                "L",
                "second mirror can reach the receiver (L − d0 + D − x0 ≤ 0)",
            ));
        }

        Ok(Scenario {
            span,
            d0,
            separation,
            omega0,
            mass,
            trajectory,
            mode,
        })
    }

    /// Source-to-receiver distance `L`, m.
    pub fn span(&self) -> f64 {
        self.span
    }

    /// Source to first-mirror rest distance `d0`, m.
    pub fn d0(&self) -> f64 {
        self.d0
    }

    /// Mirror separation `D`, m.
    pub fn separation(&self) -> f64 {
        self.separation
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    /// Photon wavevector `k = ω₀/c`.
    pub fn wavenumber(&self) -> f64 {
        self.omega0 / C
    }

    /// Platform mass `M`, kg.
    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn trajectory(&self) -> &Trajectory {
        &self.trajectory
    }

    pub fn mode(&self) -> LegMode {
        self.mode
    }

    /// Mirror transit time `τ = D/c`.
    pub fn transit_time(&self) -> f64 {
        self.separation / C
    }

    pub fn to_config(&self) -> ScenarioConfig {
        ScenarioConfig {
            span: self.span,
            d0: self.d0,
            separation: self.separation,
            omega0: self.omega0,
            mass: self.mass,
            trajectory: self.trajectory,
            mode: self.mode,
        }
    }

    /// Same geometry with another trajectory, revalidated.
    pub fn with_trajectory(&self, trajectory: Trajectory) -> Result<Self, ModelError> {
        Scenario::new(&ScenarioConfig {
            trajectory,
            ..self.to_config()
        })
    }

    pub fn with_mode(&self, mode: LegMode) -> Self {
        Scenario { mode, ..*self }
    }
}

fn finite(field: &'static str, v: f64) -> Result<(), ModelError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(value_err(field, "must be finite"))
    }
}

fn subluminal(field: &'static str, speed: f64) -> Result<(), ModelError> {
    let speed_ratio = speed / C;
    if speed_ratio < MAX_SPEED_RATIO {
        Ok(())
    } else {
        Err(ModelError::Subluminal { field, speed_ratio })
    }
}

fn geometry_err(field: &'static str, message: impl Into<String>) -> ModelError {
    ModelError::Geometry {
        field,
        message: message.into(),
    }
}

fn value_err(field: &'static str, message: impl Into<String>) -> ModelError {
    ModelError::Value {
        field,
        message: message.into(),
    }
}
