//! Sideband spectrum of a photon transmitted through the oscillating pair,
//! compared with the Bessel weights J_n(β)² at the trace's modulation index.
//!
//!     cargo run --example sideband_spectrum [x0_m]

use mirrorpair::solver::phase_trace;
use mirrorpair::spectrum::{
    bessel_line_weights, line_spectrum, modulation_index, synthesize_baseband,
};
use mirrorpair::sweep::omega_for_tau_over_period;
use mirrorpair::{make_scenario, LegMode, ScenarioConfig, Trajectory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x0: f64 = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(2.5e-8);
    let d = 1e4;
    let s = make_scenario(&ScenarioConfig {
        span: 20001.0,
        d0: 20000.0,
        separation: d,
        omega0: 2.975752870946055e15,
        mass: 1.0,
        trajectory: Trajectory::harmonic(x0, omega_for_tau_over_period(d, 0.5)),
        mode: LegMode::Geometric,
    })?;

    let n = 1024;
    let period = s.trajectory().period().unwrap();
    let grid: Vec<f64> = (0..=n).map(|j| period * j as f64 / n as f64).collect();
    let trace = phase_trace(&s, &grid)?;
    let beta = modulation_index(&trace)?;
    let lines = line_spectrum(&synthesize_baseband(&trace, n)?, 6)?;
    let weights = bessel_line_weights(beta, 6)?;

    println!("x0 = {x0:e} m, β = {beta:.6}");
    println!(
        "{:>4} {:>16} {:>16} {:>10}",
        "n", "power", "J_n(β)²", "diff"
    );
    for (l, w) in lines.iter().zip(weights) {
        println!(
            "{:>4} {:>16.10} {w:>16.10} {:>10.1e}",
            l.n,
            l.power,
            l.power - w
        );
    }
    Ok(())
}
