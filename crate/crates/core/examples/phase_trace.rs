//! Phase perturbation of successive wavecrests through an oscillating pair,
//! next to the single-mirror retro-reflection of the same motion.
//!
//!     cargo run --example phase_trace [tau_over_T]

use mirrorpair::solver::{phase_trace, retro_traverse};
use mirrorpair::sweep::omega_for_tau_over_period;
use mirrorpair::{make_scenario, LegMode, ScenarioConfig, Trajectory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let q: f64 = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(0.25);
    let d = 1e4;
    let omega = omega_for_tau_over_period(d, q);
    let s = make_scenario(&ScenarioConfig {
        span: 20001.0,
        d0: 20000.0,
        separation: d,
        omega0: 2.975752870946055e15,
        mass: 1.0,
        trajectory: Trajectory::harmonic(3e-7, omega),
        mode: LegMode::Geometric,
    })?;

    let period = s.trajectory().period().unwrap();
    let grid: Vec<f64> = (0..=32).map(|j| period * j as f64 / 32.0).collect();
    let trace = phase_trace(&s, &grid)?;

    println!("τ/T = {q}, Ω = {omega:.3} rad/s");
    println!("{:>8} {:>14} {:>14}", "t/T", "pair (rad)", "retro (rad)");
    for (&t, &p) in trace.t_emit().iter().zip(trace.phase_perturbation()) {
        let r = retro_traverse(s.d0(), s.omega0(), s.trajectory(), t)?.phase_perturbation;
        println!("{:>8.4} {p:>14.6} {r:>14.6}", t / period);
    }
    Ok(())
}
