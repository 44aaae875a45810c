//! Line spectrum of the phase-modulated photon leaving the mirror pair, as a
//! grating spectrometer would resolve it.
//!
//! The optical carrier is removed analytically: the field is represented at
//! baseband as `exp(i·φ(t))`, sampled over exactly one modulation period so
//! that every sideband `n·Ω` lands on a DFT bin. Sideband powers are checked
//! against the Jacobi–Anger weights `Jₙ(β)²`.

use num_complex::Complex64;
use rustfft::FftPlanner;
use thiserror::Error;

use crate::solver::PhaseTrace;
use crate::sweep::half_peak_to_peak;

/// Largest modulation index accepted by [`bessel_line_weights`].
pub const MAX_BETA: f64 = 20.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("trace too short: {0}")]
    TooShort(String),
    #[error("sample count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("trace scenario has no modulation period (trajectory is not harmonic)")]
    NotPeriodic,
    #[error("sideband {n_max} lies at or beyond the Nyquist bin of a {n_samples}-sample field")]
    BeyondNyquist { n_max: usize, n_samples: usize },
    #[error("modulation index {0} outside [0, {MAX_BETA}]")]
    BetaOutOfRange(f64),
    #[error("need at least one sideband order")]
    NoSidebands,
    #[error("spectral lines and weights do not cover the same orders")]
    IndexMismatch,
    #[error("invalid baseband field: {0}")]
    InvalidField(String),
}

/// One spectrometer line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumLine {
    /// Sideband order, 0 for the carrier.
    pub n: i64,
    /// `n·Ω`, rad/s.
    pub freq_offset: f64,
    /// Fraction of the photon's energy in this line.
    pub power: f64,
}

/// Carrier-free complex field samples over an integer number of modulation
/// periods.
#[derive(Debug, Clone, PartialEq)]
pub struct BasebandField {
    samples: Vec<Complex64>,
    dt: f64,
    omega: f64,
}

impl BasebandField {
    pub fn new(samples: Vec<Complex64>, dt: f64, omega: f64) -> Result<Self, SpectrumError> {
        let n = samples.len();
        if !n.is_power_of_two() {
            return Err(SpectrumError::NotPowerOfTwo(n));
        }
        if !(dt > 0.0 && omega > 0.0) {
            return Err(SpectrumError::InvalidField(
                "dt and Ω must be positive".into(),
            ));
        }
        if samples.iter().any(|z| (z.norm() - 1.0).abs() > 1e-12) {
            return Err(SpectrumError::InvalidField(
                "pure phase modulation requires unit-magnitude samples".into(),
            ));
        }
        let periods = n as f64 * dt * omega / std::f64::consts::TAU;
        if periods.round() < 1.0 || (periods - periods.round()).abs() > 1e-9 * periods {
            return Err(SpectrumError::InvalidField(format!(
                "duration spans {periods} modulation periods, not an integer"
            )));
        }
        Ok(BasebandField { samples, dt, omega })
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    fn periods(&self) -> usize {
        (self.samples.len() as f64 * self.dt * self.omega / std::f64::consts::TAU).round() as usize
    }

    /// Normalized power in every DFT bin, in natural bin order. Normalized by
    /// the time-domain energy, so the bins sum to one by Parseval's theorem.
    fn bin_powers(&self) -> Vec<f64> {
        let n = self.samples.len();
        let mut buf = self.samples.clone();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        let energy: f64 = self.samples.iter().map(|z| z.norm_sqr()).sum();
        let norm = n as f64 * energy;
        buf.iter().map(|z| z.norm_sqr() / norm).collect()
    }
}

fn trace_period(trace: &PhaseTrace) -> Result<f64, SpectrumError> {
    trace
        .scenario()
        .trajectory()
        .period()
        .ok_or(SpectrumError::NotPeriodic)
}

fn covers_period(trace: &PhaseTrace, period: f64) -> Result<(), SpectrumError> {
    if trace.len() < 4 || trace.duration() < period * (1.0 - 1e-9) {
        return Err(SpectrumError::TooShort(format!(
            "{} samples over {:e} s, need ≥ 4 samples over one period of {period:e} s",
            trace.len(),
            trace.duration()
        )));
    }
    Ok(())
}

/// Modulation index β of a phase trace: half its peak-to-peak excursion.
///
/// A trace sampled uniformly over a whole number of periods is treated as
/// cyclic, which makes the estimate agree with the sweep amplitudes.
pub fn modulation_index(trace: &PhaseTrace) -> Result<f64, SpectrumError> {
    let period = trace_period(trace)?;
    covers_period(trace, period)?;
    let phase = trace.phase_perturbation();
    let mean = phase.iter().sum::<f64>() / phase.len() as f64;
    let centred: Vec<f64> = phase.iter().map(|p| p - mean).collect();

    let t = trace.t_emit();
    let n = t.len();
    let cycles = trace.duration() / period;
    let whole = (cycles - cycles.round()).abs() <= 1e-9 * cycles;
    let step = trace.duration() / (n - 1) as f64;
    let uniform = t
        .windows(2)
        .all(|w| ((w[1] - w[0]) - step).abs() <= 1e-9 * step);
    if whole && uniform {
        Ok(half_peak_to_peak(&centred[..n - 1], true))
    } else {
        Ok(half_peak_to_peak(&centred, false))
    }
}

/// Four-point Lagrange interpolation of `(xs, ys)` at `x`.
fn cubic_at(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let n = xs.len();
    let k = xs.partition_point(|&v| v <= x).saturating_sub(1);
    let start = k.saturating_sub(1).min(n - 4);
    let (px, py) = (&xs[start..start + 4], &ys[start..start + 4]);
    let mut acc = 0.0;
    for i in 0..4 {
        let mut w = 1.0;
        for j in 0..4 {
            if i != j {
                w *= (x - px[j]) / (px[i] - px[j]);
            }
        }
        acc += w * py[i];
    }
    acc
}

/// Baseband field `exp(i·φ(t))` over one modulation period, with `φ`
/// interpolated (cubic) from the trace onto `n_samples` uniform points.
pub fn synthesize_baseband(
    trace: &PhaseTrace,
    n_samples: usize,
) -> Result<BasebandField, SpectrumError> {
    if !n_samples.is_power_of_two() {
        return Err(SpectrumError::NotPowerOfTwo(n_samples));
    }
    let period = trace_period(trace)?;
    covers_period(trace, period)?;
    let t = trace.t_emit();
    let phi = trace.phase_perturbation();
    let t0 = t[0];
    let dt = period / n_samples as f64;
    let samples = (0..n_samples)
        .map(|j| Complex64::cis(cubic_at(t, phi, t0 + period * j as f64 / n_samples as f64)))
        .collect();
    let omega = std::f64::consts::TAU / period;
    BasebandField::new(samples, dt, omega)
}

/// Lines `n ∈ [−n_max, n_max]` of the field's power spectrum.
pub fn line_spectrum(
    field: &BasebandField,
    n_max: usize,
) -> Result<Vec<SpectrumLine>, SpectrumError> {
    let n = field.samples.len();
    let periods = field.periods();
    if 2 * n_max * periods >= n {
        return Err(SpectrumError::BeyondNyquist {
            n_max,
            n_samples: n,
        });
    }
    let powers = field.bin_powers();
    let m = n_max as i64;
    Ok((-m..=m)
        .map(|order| {
            let bin = (order * periods as i64).rem_euclid(n as i64) as usize;
            SpectrumLine {
                n: order,
                freq_offset: order as f64 * field.omega,
                power: powers[bin].clamp(0.0, 1.0),
            }
        })
        .collect())
}

/// Sum of the normalized power over every DFT bin. One, up to rounding.
pub fn total_power(field: &BasebandField) -> f64 {
    field.bin_powers().iter().sum()
}

/// Bessel function of the first kind `Jₙ(x)` by its ascending power series.
pub fn bessel_j(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for j in 1..=order {
        term *= half / j as f64;
    }
    if term == 0.0 {
        return 0.0;
    }
    let q = half * half;
    let mut sum = term;
    for k in 1..1000u32 {
        let denom = k as f64 * (k + order) as f64;
        term *= -q / denom;
        sum += term;
        // Stop once terms are shrinking and negligible.
        if denom > q && term.abs() <= 1e-16 * sum.abs() {
            break;
        }
    }
    sum
}

/// `Jₙ(β)²` for `n = −n_max ..= n_max`, in that order.
pub fn bessel_line_weights(beta: f64, n_max: usize) -> Result<Vec<f64>, SpectrumError> {
    if !(0.0..=MAX_BETA).contains(&beta) {
        return Err(SpectrumError::BetaOutOfRange(beta));
    }
    if n_max == 0 {
        return Err(SpectrumError::NoSidebands);
    }
    let half: Vec<f64> = (0..=n_max as u32)
        .map(|n| {
            let j = bessel_j(n, beta);
            j * j
        })
        .collect();
    Ok(half[1..].iter().rev().chain(half.iter()).copied().collect())
}

/// Largest absolute difference between measured line powers and predicted
/// weights laid out as by [`bessel_line_weights`].
pub fn compare_spectra(lines: &[SpectrumLine], weights: &[f64]) -> Result<f64, SpectrumError> {
    if lines.len() != weights.len() || lines.len().is_multiple_of(2) {
        return Err(SpectrumError::IndexMismatch);
    }
    let m = (lines.len() / 2) as i64;
    if lines.iter().enumerate().any(|(i, l)| l.n != i as i64 - m) {
        return Err(SpectrumError::IndexMismatch);
    }
    Ok(lines
        .iter()
        .zip(weights)
        .map(|(l, w)| (l.power - w).abs())
        .fold(0.0, f64::max))
}

/// Sideband spacing `Ω` in units of the spectrometer's resolution bandwidth.
/// Lines are resolved when this exceeds one.
pub fn line_spacing_over_resolution(omega: f64, resolution_bandwidth: f64) -> f64 {
    omega / resolution_bandwidth
}
