//! Closed-form results: interferometric phases, the delay-induced platform
//! displacement, gravitational frequency shifts, and the photon-stream
//! center-of-mass ledger.

use thiserror::Error;

use crate::constants::{C, G, HBAR};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid value for `{field}`: {message}")]
pub struct FormulaError {
    pub field: &'static str,
    pub message: String,
}

fn err(field: &'static str, message: impl Into<String>) -> FormulaError {
    FormulaError {
        field,
        message: message.into(),
    }
}

fn positive(field: &'static str, v: f64) -> Result<f64, FormulaError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(err(
            field,
            format!("must be positive and finite, got {v:e}"),
        ))
    }
}

fn non_negative(field: &'static str, v: f64) -> Result<f64, FormulaError> {
    if v >= 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(err(
            field,
            format!("must be non-negative and finite, got {v:e}"),
        ))
    }
}

/// The particle sent from source to receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Particle {
    Massive { mass: f64, speed: f64 },
    Photon { omega0: f64 },
}

impl Particle {
    pub fn massive(mass: f64, speed: f64) -> Result<Self, FormulaError> {
        positive("m", mass)?;
        positive("v", speed)?;
        if speed >= C {
            return Err(err("v", "massive particle must be slower than light"));
        }
        Ok(Particle::Massive { mass, speed })
    }

    pub fn photon(omega0: f64) -> Result<Self, FormulaError> {
        positive("omega0", omega0)?;
        Ok(Particle::Photon { omega0 })
    }

    /// Photon of vacuum wavelength `lambda`, m.
    pub fn photon_wavelength(lambda: f64) -> Result<Self, FormulaError> {
        positive("lambda", lambda)?;
        Self::photon(std::f64::consts::TAU * C / lambda)
    }

    /// Speed the platform speed is compared against.
    fn reference_speed(&self) -> f64 {
        match *self {
            Particle::Massive { speed, .. } => speed,
            Particle::Photon { .. } => C,
        }
    }

    /// `m·V/ħ` for matter, `k·V/c` for light: phase per unit length of the
    /// velocity-linear term.
    fn velocity_coefficient(&self, platform_speed: f64) -> f64 {
        match *self {
            Particle::Massive { mass, .. } => mass * platform_speed / HBAR,
            Particle::Photon { omega0 } => (omega0 / C) * platform_speed / C,
        }
    }

    fn check_speed(&self, platform_speed: f64) -> Result<(), FormulaError> {
        if !platform_speed.is_finite() || platform_speed.abs() >= 0.01 * self.reference_speed() {
            return Err(err(
                "V",
                "platform speed must stay below 1% of the particle speed",
            ));
        }
        Ok(())
    }
}

/// Source-to-receiver phase through a mirror pair moving at `platform_speed`.
///
/// Massive: `m·v·(L+2D)/ħ + 2·D·m·V/ħ`. Photon: `k·(L+2D) + 2·D·k·V/c`.
pub fn closed_form_phase(
    p: &Particle,
    span: f64,
    separation: f64,
    platform_speed: f64,
) -> Result<f64, FormulaError> {
    positive("L", span)?;
    positive("D", separation)?;
    p.check_speed(platform_speed)?;
    let carrier = match *p {
        Particle::Massive { mass, speed } => mass * speed / HBAR,
        Particle::Photon { omega0 } => omega0 / C,
    };
    Ok(carrier * (span + 2.0 * separation)
        + 2.0 * separation * p.velocity_coefficient(platform_speed))
}

/// Sagnac phase between counter-propagating beams: `4·D·m·V/ħ` or `4·D·k·V/c`.
pub fn sagnac_phase(
    p: &Particle,
    separation: f64,
    platform_speed: f64,
) -> Result<f64, FormulaError> {
    positive("D", separation)?;
    p.check_speed(platform_speed)?;
    Ok(4.0 * separation * p.velocity_coefficient(platform_speed))
}

/// Platform displacement caused by the photon's delay between the mirrors,
/// `δX = 2·D·ħω₀/(M·c²)`.
pub fn delay_displacement(separation: f64, omega0: f64, mass: f64) -> Result<f64, FormulaError> {
    positive("D", separation)?;
    positive("omega0", omega0)?;
    positive("M", mass)?;
    Ok(2.0 * separation * HBAR * omega0 / (mass * C * C))
}

/// `L_P = √(ħG/c³)`.
pub fn planck_length() -> f64 {
    (HBAR * G / (C * C * C)).sqrt()
}

/// Standard quantum limit for two pulses `theta` seconds apart on a mirror
/// of mass `mass`: `√(ħΘ/M)`.
pub fn sql_displacement(theta: f64, mass: f64) -> Result<f64, FormulaError> {
    positive("Theta", theta)?;
    positive("M", mass)?;
    Ok((HBAR * theta / mass).sqrt())
}

/// Time for the recoil of the absorbed fraction `epsilon` of a photon stream
/// to move the platform as far as the delay displacement does: `D/(ε·c)`.
pub fn absorption_recoil_time(separation: f64, epsilon: f64) -> Result<f64, FormulaError> {
    positive("D", separation)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(err("epsilon", "loss fraction must lie in (0, 1)"));
    }
    Ok(separation / (epsilon * C))
}

/// The three photon frequency shifts of a mirror pair falling freely in a
/// uniform field, rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GravityShifts {
    /// From the equivalence principle: `ω₀·g·(2D + L)/c²`.
    pub d_omega_ep: f64,
    /// From the platform's potential-energy loss: `ω₀·2gD/c²`.
    pub d_omega_displaced: f64,
    /// Gravitational blue shift over the height `L`: `ω₀·g·L/c²`.
    pub d_omega_l: f64,
    /// `d_omega_ep − d_omega_displaced − d_omega_l`.
    pub residual: f64,
    /// `M·g·δX/ħ`, the displaced shift computed through the platform mass.
    pub d_omega_displaced_via_mass: f64,
}

pub fn gravity_shifts(
    omega0: f64,
    g: f64,
    separation: f64,
    span: f64,
    mass: f64,
) -> Result<GravityShifts, FormulaError> {
    positive("omega0", omega0)?;
    non_negative("g", g)?;
    positive("D", separation)?;
    positive("L", span)?;
    positive("M", mass)?;
    let rate = omega0 * g / (C * C);
    let d_omega_ep = rate * (2.0 * separation + span);
    let d_omega_displaced = rate * (2.0 * separation);
    let d_omega_l = rate * span;
    let d_omega_displaced_via_mass =
        mass * g * delay_displacement(separation, omega0, mass)? / HBAR;
    Ok(GravityShifts {
        d_omega_ep,
        d_omega_displaced,
        d_omega_l,
        residual: d_omega_ep - d_omega_displaced - d_omega_l,
        d_omega_displaced_via_mass,
    })
}

/// Center-of-mass bookkeeping for a stream of photons crossing the pair
/// while source, receiver and platform sit on a common free frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LedgerResult {
    pub n_photons: u64,
    /// Platform displacement along the beam, m.
    pub platform_disp: f64,
    /// Compensating frame displacement, m.
    pub frame_disp: f64,
    /// Shift of the combined center of mass, m. Zero up to rounding.
    pub cm_residual: f64,
    /// The classical field model leaves the platform where it was.
    pub classical_platform_disp: f64,
    /// Quantum minus classical platform displacement, m.
    pub quantum_classical_gap: f64,
    /// `D/(ε·c)`, or `+∞` for lossless mirrors, s.
    pub absorbed_recoil_equiv_time: f64,
}

pub fn photon_stream_ledger(
    n_photons: u64,
    omega0: f64,
    separation: f64,
    platform_mass: f64,
    frame_mass: f64,
    epsilon: f64,
) -> Result<LedgerResult, FormulaError> {
    positive("M_frame", frame_mass)?;
    if !(0.0..1.0).contains(&epsilon) {
        return Err(err("epsilon", "loss fraction must lie in [0, 1)"));
    }
    let platform_disp = n_photons as f64 * delay_displacement(separation, omega0, platform_mass)?;
    let frame_disp = -platform_disp * platform_mass / frame_mass;
    let cm_residual =
        (platform_mass * platform_disp + frame_mass * frame_disp) / (platform_mass + frame_mass);
    let absorbed_recoil_equiv_time = if epsilon == 0.0 {
        f64::INFINITY
    } else {
        absorption_recoil_time(separation, epsilon)?
    };
    Ok(LedgerResult {
        n_photons,
        platform_disp,
        frame_disp,
        cm_residual,
        classical_platform_disp: 0.0,
        quantum_classical_gap: platform_disp,
        absorbed_recoil_equiv_time,
    })
}

/// Photon rate `c/D` that keeps on average one photon between the mirrors.
pub fn single_photon_rate(separation: f64) -> Result<f64, FormulaError> {
    positive("D", separation)?;
    Ok(C / separation)
}
