//! Retarded-time solution of the photon's path through the mirror pair.
//!
//! Every leg is an implicit equation of the form
//!
//! ```text
//! c·t_leg = rest_distance + sign·x(t_start + t_leg)
//! ```
//!
//! A wavecrest leaving at `t_start` reaches a moving boundary whose position
//! depends on the arrival time. Mirror displacements are ~1e-7 m on legs of
//! ~1e4 m, so each leg is solved for its perturbation `δ = t_leg − rest/c`
//! rather than for `t_leg` itself. The leg times are then `rest/c + δ`, and
//! phase perturbations are assembled from the `δ`s alone.

use thiserror::Error;

use crate::constants::C;
use crate::model::{LegMode, ModelError, Scenario, Trajectory};

/// Iteration cap for both the fixed-point and the bisection solver.
pub const MAX_ITERATIONS: usize = 200;

/// Absolute convergence tolerance on a leg perturbation, s.
pub const TIME_TOLERANCE: f64 = 1e-18;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolverError {
    #[error("retarded-time solve did not converge after {iterations} iterations (last step {last_step:e} s)")]
    NoConvergence { iterations: usize, last_step: f64 },
    #[error("invalid solver input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Orientation of the boundary displacement in a leg equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// Root-finding strategy for a single leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Fixed-point iteration relaxed by the analytic slope of the right-hand
    /// side, falling back to bisection if it stalls.
    #[default]
    FixedPoint,
    /// Pure bracketing bisection. Slow, but shares no code path with the
    /// fixed-point update.
    Bisection,
}

/// One solved leg: `time = rest + perturbation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leg {
    pub rest: f64,
    pub perturbation: f64,
}

impl Leg {
    pub fn time(&self) -> f64 {
        self.rest + self.perturbation
    }
}

/// Solve `c·t = rest_distance + sign·x(t_start + t)` for the leg time.
pub fn solve_transit(
    rest_distance: f64,
    sign: Sign,
    traj: &Trajectory,
    t_start: f64,
) -> Result<Leg, SolverError> {
    solve_transit_with(rest_distance, sign, traj, t_start, Method::FixedPoint)
}

pub fn solve_transit_with(
    rest_distance: f64,
    sign: Sign,
    traj: &Trajectory,
    t_start: f64,
    method: Method,
) -> Result<Leg, SolverError> {
    if !(rest_distance > 0.0 && rest_distance.is_finite()) {
        return Err(SolverError::InvalidInput(format!(
            "rest distance must be positive, got {rest_distance:e}"
        )));
    }
    let rest = rest_distance / C;
    let sgn = sign.value();
    let at = t_start + rest;
    let perturbation = solve_perturbation(
        |delta| {
            (
                sgn * traj.position(at + delta),
                sgn * traj.velocity(at + delta),
            )
        },
        traj.max_abs_displacement(),
        method,
    )?;
    Ok(Leg { rest, perturbation })
}

/// Residual `c·t − (rest_distance + sign·x(t_start + t))` of a solved leg, m.
///
/// Evaluated in perturbation form, which is algebraically identical.
pub fn leg_residual(
    rest_distance: f64,
    sign: Sign,
    traj: &Trajectory,
    t_start: f64,
    leg: &Leg,
) -> f64 {
    let at = t_start + rest_distance / C;
    C * leg.perturbation - sign.value() * traj.position(at + leg.perturbation)
}

/// Solve `c·δ = rhs(δ)` where `rhs` returns the boundary displacement and its
/// derivative with respect to `δ`. `bound` is a bound on `|rhs|` when known.
fn solve_perturbation<F>(rhs: F, bound: Option<f64>, method: Method) -> Result<f64, SolverError>
where
    F: Fn(f64) -> (f64, f64),
{
    match method {
        Method::FixedPoint => match fixed_point(&rhs) {
            Ok(delta) => Ok(delta),
            Err(SolverError::NoConvergence { .. }) => bisection(&rhs, bound),
            Err(e) => Err(e),
        },
        Method::Bisection => bisection(&rhs, bound),
    }
}

fn fixed_point<F>(rhs: &F) -> Result<f64, SolverError>
where
    F: Fn(f64) -> (f64, f64),
{
    let mut delta = 0.0;
    let mut last_step = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let (disp, slope) = rhs(delta);
        // The plain map δ ← disp/c contracts with factor |slope|/c < 1/2.
        // Relaxing by 1/(1 − slope/c) removes the linear part of the error.
        let step = (disp / C - delta) / (1.0 - slope / C);
        if !step.is_finite() {
            break;
        }
        delta += step;
        last_step = step.abs();
        if last_step <= 4.0 * f64::EPSILON * delta.abs() || last_step < 1e-300 {
            return Ok(delta);
        }
    }
    if last_step <= TIME_TOLERANCE {
        return Ok(delta);
    }
    Err(SolverError::NoConvergence {
        iterations: MAX_ITERATIONS,
        last_step,
    })
}

fn bisection<F>(rhs: &F, bound: Option<f64>) -> Result<f64, SolverError>
where
    F: Fn(f64) -> (f64, f64),
{
    // f(δ) = c·δ − rhs(δ) is strictly increasing because |slope| < c.
    let f = |delta: f64| C * delta - rhs(delta).0;

    let (mut lo, mut hi) = match bound {
        Some(b) => {
            let half = (b / C) * (1.0 + 1e-9) + 1e-300;
            (-half, half)
        }
        None => {
            let centre = rhs(0.0).0 / C;
            let half = centre.abs().max(1e-30);
            (centre - half, centre + half)
        }
    };
    let mut expansions = 0;
    while !(f(lo) <= 0.0 && f(hi) >= 0.0) {
        if expansions == MAX_ITERATIONS {
            return Err(SolverError::NoConvergence {
                iterations: MAX_ITERATIONS,
                last_step: hi - lo,
            });
        }
        let width = hi - lo;
        lo -= width;
        hi += width;
        expansions += 1;
    }

    for _ in 0..MAX_ITERATIONS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    if hi - lo > TIME_TOLERANCE {
        return Err(SolverError::NoConvergence {
            iterations: MAX_ITERATIONS,
            last_step: hi - lo,
        });
    }
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

/// Transit times and phase of one wavecrest from source to receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraversalResult {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub dt1: f64,
    pub dt2: f64,
    pub dt3: f64,
    /// `dt1 + dt2 + dt3`, s.
    pub delay_perturbation: f64,
    /// `ω₀·(t1 + t2 + t3)`, rad.
    pub phase: f64,
    /// `ω₀·(dt1 + dt2 + dt3)`, rad.
    pub phase_perturbation: f64,
}

impl TraversalResult {
    /// Optical path length `c·(t1 + t2 + t3)`, m.
    pub fn path_length(&self) -> f64 {
        C * (self.t1 + self.t2 + self.t3)
    }
}

/// Follow one wavecrest emitted at `t_emit` through both mirrors.
pub fn traverse(s: &Scenario, t_emit: f64) -> Result<TraversalResult, SolverError> {
    traverse_with(s, t_emit, Method::FixedPoint)
}

pub fn traverse_with(
    s: &Scenario,
    t_emit: f64,
    method: Method,
) -> Result<TraversalResult, SolverError> {
    let traj = s.trajectory();
    let omega0 = s.omega0();
    let d0 = s.d0();
    let sep = s.separation();

    // S → mirror 1 at d0 − s(t).
    let leg1 = solve_transit_with(d0, Sign::Minus, traj, t_emit, method)?;
    let t1 = leg1.time();
    let ta = t_emit + t1;

    let (leg2, pair_sum) = match s.mode() {
        LegMode::Geometric => {
            // mirror 1 → mirror 2: c·t2 = D − s(ta) + s(ta + t2)
            let rest = sep / C;
            let bound = traj.max_abs_displacement().map(|b| 2.0 * b);
            let delta = solve_perturbation(
                |delta| {
                    (
                        traj.displacement_change(ta, rest + delta),
                        traj.velocity(ta + rest + delta),
                    )
                },
                bound,
                method,
            )?;
            let leg = Leg {
                rest,
                perturbation: delta,
            };
            // dt1 + dt3 = (s(tb) − s(ta))/c
            (leg, traj.displacement_change(ta, leg.time()) / C)
        }
        LegMode::Literal => {
            // c·t2 = d0 − D − s(ta + t2), as printed.
            let leg = solve_transit_with(d0 - sep, Sign::Minus, traj, ta, method)?;
            // dt1 + dt3
            let tb = ta + leg.time();
            (leg, leg1.perturbation + traj.position(tb) / C)
        }
    };
    let t2 = leg2.time();
    let tb = ta + t2;

    // mirror 2 at d0 − D − s(tb) → R at L.
    let leg3 = Leg {
        rest: (s.span() - d0 + sep) / C,
        perturbation: traj.position(tb) / C,
    };

    let delay_perturbation = leg2.perturbation + pair_sum;

    Ok(TraversalResult {
        t1,
        t2,
        t3: leg3.time(),
        dt1: leg1.perturbation,
        dt2: leg2.perturbation,
        dt3: leg3.perturbation,
        delay_perturbation,
        phase: omega0 * (t1 + t2 + leg3.time()),
        phase_perturbation: omega0 * delay_perturbation,
    })
}

/// Phase perturbation sampled over a grid of emission times.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseTrace {
    t_emit: Vec<f64>,
    phase_perturbation: Vec<f64>,
    scenario: Scenario,
}

impl PhaseTrace {
    /// Wrap precomputed samples. The grid must hold at least two strictly
    /// increasing times and match the phase samples in length.
    pub fn from_samples(
        scenario: Scenario,
        t_emit: Vec<f64>,
        phase_perturbation: Vec<f64>,
    ) -> Result<Self, SolverError> {
        check_grid(&t_emit)?;
        if t_emit.len() != phase_perturbation.len() {
            return Err(SolverError::InvalidInput(format!(
                "{} emission times but {} phase samples",
                t_emit.len(),
                phase_perturbation.len()
            )));
        }
        Ok(PhaseTrace {
            t_emit,
            phase_perturbation,
            scenario,
        })
    }

    pub fn t_emit(&self) -> &[f64] {
        &self.t_emit
    }

    pub fn phase_perturbation(&self) -> &[f64] {
        &self.phase_perturbation
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn len(&self) -> usize {
        self.t_emit.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_emit.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.t_emit[self.t_emit.len() - 1] - self.t_emit[0]
    }
}

fn check_grid(t: &[f64]) -> Result<(), SolverError> {
    if t.len() < 2 {
        return Err(SolverError::InvalidInput(
            "emission grid needs at least two samples".into(),
        ));
    }
    if t.iter().any(|v| !v.is_finite()) || t.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SolverError::InvalidInput(
            "emission times must be finite and strictly increasing".into(),
        ));
    }
    Ok(())
}

pub fn phase_trace(s: &Scenario, t_emit: &[f64]) -> Result<PhaseTrace, SolverError> {
    check_grid(t_emit)?;
    let phase = t_emit
        .iter()
        .map(|&t| traverse(s, t).map(|r| r.phase_perturbation))
        .collect::<Result<Vec<_>, _>>()?;
    PhaseTrace::from_samples(*s, t_emit.to_vec(), phase)
}

/// Default finite-difference step for [`received_frequency`].
pub fn default_frequency_step(traj: &Trajectory) -> f64 {
    match traj.angular_frequency() {
        Some(w) => (1e-3 / w).min(1e-3),
        None => 1e-3,
    }
}

/// `ω_R − ω₀` for the wavecrest emitted at `t_emit`, rad/s.
///
/// Computed from the central difference of the delay perturbation, so the
/// shift keeps full precision even when it is ~1e-19 of `ω₀`.
pub fn received_frequency_shift(
    s: &Scenario,
    t_emit: f64,
    h: Option<f64>,
) -> Result<f64, SolverError> {
    let h = h.unwrap_or_else(|| default_frequency_step(s.trajectory()));
    if !(h > 0.0 && h.is_finite()) {
        return Err(SolverError::InvalidInput(format!(
            "finite-difference step must be positive, got {h:e}"
        )));
    }
    let ahead = traverse(s, t_emit + h)?.delay_perturbation;
    let behind = traverse(s, t_emit - h)?.delay_perturbation;
    Ok(-s.omega0() * (ahead - behind) / (2.0 * h))
}

/// Angular frequency seen at the receiver, `ω₀·(1 − dΔt/dt)`.
pub fn received_frequency(s: &Scenario, t_emit: f64, h: Option<f64>) -> Result<f64, SolverError> {
    Ok(s.omega0() + received_frequency_shift(s, t_emit, h)?)
}

/// Round trip off a single mirror with a co-located source and receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RetroResult {
    pub leg: Leg,
    pub phase: f64,
    pub phase_perturbation: f64,
}

/// Single-mirror retro-reflection: `c·tA = d0 + x(t + tA)`, `tB = tA`.
pub fn retro_traverse(
    d0: f64,
    omega0: f64,
    traj: &Trajectory,
    t_emit: f64,
) -> Result<RetroResult, SolverError> {
    retro_traverse_with(d0, omega0, traj, t_emit, Method::FixedPoint)
}

pub fn retro_traverse_with(
    d0: f64,
    omega0: f64,
    traj: &Trajectory,
    t_emit: f64,
    method: Method,
) -> Result<RetroResult, SolverError> {
    if let Some(reach) = traj.max_abs_displacement() {
        if d0 <= reach {
            return Err(SolverError::InvalidInput(format!(
                "mirror distance {d0:e} m does not exceed the oscillation amplitude {reach:e} m"
            )));
        }
    }
    let leg = solve_transit_with(d0, Sign::Plus, traj, t_emit, method)?;
    let t = leg.time();
    Ok(RetroResult {
        leg,
        phase: omega0 * (t + t),
        phase_perturbation: 2.0 * omega0 * leg.perturbation,
    })
}

/// The scenario as traversed by the counter-propagating beam of a Sagnac
/// loop: same mirrors, platform motion reversed relative to the beam.
pub fn counter_propagating(s: &Scenario) -> Result<Scenario, SolverError> {
    Ok(s.with_trajectory(s.trajectory().mirrored())?)
}

/// Phase difference between the two Sagnac beams for a crest pair emitted at
/// `t_emit`, rad.
pub fn sagnac_difference(s: &Scenario, t_emit: f64) -> Result<f64, SolverError> {
    let forward = traverse(s, t_emit)?.phase_perturbation;
    let backward = traverse(&counter_propagating(s)?, t_emit)?.phase_perturbation;
    Ok(forward - backward)
}
