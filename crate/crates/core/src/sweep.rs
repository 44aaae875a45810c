//! Signal Ratio of the oscillating mirror pair against a single oscillating
//! mirror, swept over the oscillation frequency.
//!
//! The amplitude of a phase trace is taken as half its peak-to-peak value
//! over exactly one oscillation period, with each extremum refined by a
//! parabola through the extremal sample and its two neighbours.

use rayon::prelude::*;
use thiserror::Error;

use crate::constants::C;
use crate::model::{ModelError, Scenario, Trajectory};
use crate::solver::{retro_traverse, sagnac_difference, traverse, SolverError};

pub const DEFAULT_SAMPLES_PER_PERIOD: usize = 256;
pub const MIN_SAMPLES_PER_PERIOD: usize = 64;

/// Single-mirror amplitudes below this are treated as no signal, rad.
pub const DEGENERATE_BASELINE: f64 = 1e-18;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("scenario trajectory is not harmonic")]
    NotHarmonic,
    #[error("need at least {MIN_SAMPLES_PER_PERIOD} samples per period, got {0}")]
    TooFewSamples(usize),
    #[error("single-mirror baseline amplitude {0:e} rad is degenerate")]
    DegenerateBaseline(f64),
    #[error("frequency grid must be finite and strictly increasing")]
    GridNotIncreasing,
    #[error("need at least 3 points to locate extrema, got {0}")]
    TooFewPoints(usize),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// One sample of the Signal Ratio curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalRatioPoint {
    pub omega: f64,
    pub tau_over_t: f64,
    pub pair_amp: f64,
    pub single_amp: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Peak,
    Trough,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub omega: f64,
    pub tau_over_t: f64,
    pub ratio: f64,
    pub kind: ExtremumKind,
}

/// `τ/T = (D/c)·Ω/(2π)`.
pub fn tau_over_period(separation: f64, omega: f64) -> f64 {
    separation * omega / (std::f64::consts::TAU * C)
}

/// Inverse of [`tau_over_period`].
pub fn omega_for_tau_over_period(separation: f64, tau_over_t: f64) -> f64 {
    tau_over_t * std::f64::consts::TAU * C / separation
}

/// Vertex height of the parabola through three equally spaced samples, or
/// the middle sample if the vertex falls outside the neighbourhood.
fn parabolic_extremum(left: f64, mid: f64, right: f64) -> f64 {
    let curvature = left - 2.0 * mid + right;
    if curvature == 0.0 {
        return mid;
    }
    let offset = 0.5 * (left - right) / curvature;
    if offset.abs() > 1.0 {
        return mid;
    }
    mid - 0.125 * (right - left) * (right - left) / curvature
}

/// Half peak-to-peak amplitude of `samples`, with parabolic refinement of
/// both extrema. With `cyclic` the samples are one period of a periodic
/// signal and neighbours wrap around; otherwise extrema at the ends are left
/// unrefined.
pub fn half_peak_to_peak(samples: &[f64], cyclic: bool) -> f64 {
    let n = samples.len();
    if n == 0 {
        return 0.0;
    }
    let (mut imax, mut imin) = (0, 0);
    for (i, &v) in samples.iter().enumerate() {
        if v > samples[imax] {
            imax = i;
        }
        if v < samples[imin] {
            imin = i;
        }
    }
    let refine = |i: usize| -> f64 {
        if n < 3 {
            return samples[i];
        }
        let (l, r) = if cyclic {
            ((i + n - 1) % n, (i + 1) % n)
        } else if i == 0 || i == n - 1 {
            return samples[i];
        } else {
            (i - 1, i + 1)
        };
        parabolic_extremum(samples[l], samples[i], samples[r])
    };
    let hi = refine(imax);
    let lo = refine(imin);
    (0.5 * (hi - lo)).max(0.0)
}

fn harmonic_period(s: &Scenario) -> Result<f64, SweepError> {
    s.trajectory().period().ok_or(SweepError::NotHarmonic)
}

fn check_samples(n: usize) -> Result<(), SweepError> {
    if n < MIN_SAMPLES_PER_PERIOD {
        Err(SweepError::TooFewSamples(n))
    } else {
        Ok(())
    }
}

fn one_period<F>(period: f64, n: usize, t0: f64, f: F) -> Result<Vec<f64>, SweepError>
where
    F: Fn(f64) -> Result<f64, SolverError>,
{
    (0..n)
        .map(|j| f(t0 + period * j as f64 / n as f64).map_err(SweepError::from))
        .collect()
}

/// Half peak-to-peak phase perturbation of the pair over one period.
pub fn max_phase_variation(s: &Scenario, samples_per_period: usize) -> Result<f64, SweepError> {
    max_phase_variation_from(s, samples_per_period, 0.0)
}

/// As [`max_phase_variation`], with the sampled period starting at `t0`.
pub fn max_phase_variation_from(
    s: &Scenario,
    samples_per_period: usize,
    t0: f64,
) -> Result<f64, SweepError> {
    check_samples(samples_per_period)?;
    let period = harmonic_period(s)?;
    let trace = one_period(period, samples_per_period, t0, |t| {
        traverse(s, t).map(|r| r.phase_perturbation)
    })?;
    Ok(half_peak_to_peak(&trace, true))
}

/// Half peak-to-peak phase perturbation of the single-mirror retro-reflection
/// with the scenario's `d0`, `x0` and `Ω`.
pub fn retro_phase_variation(s: &Scenario, samples_per_period: usize) -> Result<f64, SweepError> {
    retro_phase_variation_from(s, samples_per_period, 0.0)
}

pub fn retro_phase_variation_from(
    s: &Scenario,
    samples_per_period: usize,
    t0: f64,
) -> Result<f64, SweepError> {
    check_samples(samples_per_period)?;
    let period = harmonic_period(s)?;
    let trace = one_period(period, samples_per_period, t0, |t| {
        retro_traverse(s.d0(), s.omega0(), s.trajectory(), t).map(|r| r.phase_perturbation)
    })?;
    Ok(half_peak_to_peak(&trace, true))
}

/// Half peak-to-peak of the Sagnac difference between the two
/// counter-propagating beams.
pub fn sagnac_phase_variation(s: &Scenario, samples_per_period: usize) -> Result<f64, SweepError> {
    check_samples(samples_per_period)?;
    let period = harmonic_period(s)?;
    let trace = one_period(period, samples_per_period, 0.0, |t| sagnac_difference(s, t))?;
    Ok(half_peak_to_peak(&trace, true))
}

/// Signal Ratio at oscillation frequency `omega`, keeping the scenario's
/// amplitude and phase offset.
pub fn signal_ratio(s: &Scenario, omega: f64) -> Result<SignalRatioPoint, SweepError> {
    signal_ratio_with(s, omega, DEFAULT_SAMPLES_PER_PERIOD)
}

pub fn signal_ratio_with(
    s: &Scenario,
    omega: f64,
    samples_per_period: usize,
) -> Result<SignalRatioPoint, SweepError> {
    let retuned = match *s.trajectory() {
        Trajectory::Harmonic {
            amplitude, phase, ..
        } => s.with_trajectory(Trajectory::Harmonic {
            amplitude,
            angular_frequency: omega,
            phase,
        })?,
        _ => return Err(SweepError::NotHarmonic),
    };
    let pair_amp = max_phase_variation(&retuned, samples_per_period)?;
    let single_amp = retro_phase_variation(&retuned, samples_per_period)?;
    if single_amp < DEGENERATE_BASELINE {
        return Err(SweepError::DegenerateBaseline(single_amp));
    }
    Ok(SignalRatioPoint {
        omega,
        tau_over_t: tau_over_period(s.separation(), omega),
        pair_amp,
        single_amp,
        ratio: pair_amp / single_amp,
    })
}

fn check_grid(grid: &[f64]) -> Result<(), SweepError> {
    if grid.iter().any(|w| !w.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SweepError::GridNotIncreasing);
    }
    Ok(())
}

/// Signal Ratio at every frequency of `grid`. A point that fails is reported
/// in place and the sweep carries on.
pub fn sweep_signal_ratio(
    s: &Scenario,
    grid: &[f64],
) -> Result<Vec<Result<SignalRatioPoint, SweepError>>, SweepError> {
    check_grid(grid)?;
    Ok(grid.iter().map(|&w| signal_ratio(s, w)).collect())
}

/// Parallel [`sweep_signal_ratio`] on the current rayon pool. Output order
/// and values do not depend on the number of threads.
pub fn sweep_signal_ratio_par(
    s: &Scenario,
    grid: &[f64],
    samples_per_period: usize,
) -> Result<Vec<Result<SignalRatioPoint, SweepError>>, SweepError> {
    check_grid(grid)?;
    Ok(grid
        .par_iter()
        .map(|&w| signal_ratio_with(s, w, samples_per_period))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GridScale {
    #[default]
    Linear,
    Log,
}

/// `n` frequencies from `min` to `max` inclusive.
pub fn omega_grid(min: f64, max: f64, n: usize, scale: GridScale) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let last = (n - 1) as f64;
            (0..n)
                .map(|i| {
                    let u = i as f64 / last;
                    match scale {
                        GridScale::Linear => min + (max - min) * u,
                        GridScale::Log => (min.ln() + (max.ln() - min.ln()) * u).exp(),
                    }
                })
                .collect()
        }
    }
}

/// Interior strict local maxima and minima of the ratio, each refined by a
/// parabola through its three-point neighbourhood.
pub fn locate_extrema(points: &[SignalRatioPoint]) -> Result<Vec<Extremum>, SweepError> {
    if points.len() < 3 {
        return Err(SweepError::TooFewPoints(points.len()));
    }
    let mut out = Vec::new();
    for w in points.windows(3) {
        let (a, b, c) = (&w[0], &w[1], &w[2]);
        let kind = if b.ratio > a.ratio && b.ratio > c.ratio {
            ExtremumKind::Peak
        } else if b.ratio < a.ratio && b.ratio < c.ratio {
            ExtremumKind::Trough
        } else {
            continue;
        };
        let (omega, ratio) =
            parabola_vertex((a.omega, a.ratio), (b.omega, b.ratio), (c.omega, c.ratio));
        // Keep the refined point inside the bracket and no worse than the sample.
        let omega = omega.clamp(a.omega, c.omega);
        let ratio = match kind {
            ExtremumKind::Peak => ratio.max(b.ratio),
            ExtremumKind::Trough => ratio.min(b.ratio).max(0.0),
        };
        out.push(Extremum {
            omega,
            tau_over_t: b.tau_over_t * omega / b.omega,
            ratio,
            kind,
        });
    }
    Ok(out)
}

/// Vertex of the parabola through three points with distinct abscissae.
fn parabola_vertex((x0, y0): (f64, f64), (x1, y1): (f64, f64), (x2, y2): (f64, f64)) -> (f64, f64) {
    // Divided differences.
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let a = (d12 - d01) / (x2 - x0);
    if a == 0.0 || !a.is_finite() {
        return (x1, y1);
    }
    // y(x) = y0 + d01·(x − x0) + a·(x − x0)(x − x1)
    let xv = 0.5 * (x0 + x1) - 0.5 * d01 / a;
    let yv = y0 + d01 * (xv - x0) + a * (xv - x0) * (xv - x1);
    (xv, yv)
}
