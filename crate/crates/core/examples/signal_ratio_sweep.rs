//! Signal Ratio of the mirror pair over a single retroreflector versus the
//! ratio of inter-mirror transit time to oscillation period, with extrema.
//!
//!     cargo run --release --example signal_ratio_sweep

use mirrorpair::sweep::{
    locate_extrema, omega_for_tau_over_period, omega_grid, sweep_signal_ratio, GridScale,
};
use mirrorpair::{make_scenario, LegMode, ScenarioConfig, Trajectory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let d = 1e4;
    for mode in [LegMode::Geometric, LegMode::Literal] {
        let s = make_scenario(&ScenarioConfig {
            span: 20001.0,
            d0: 20000.0,
            separation: d,
            omega0: 2.975752870946055e15,
            mass: 1.0,
            trajectory: Trajectory::harmonic(3e-7, 1.0),
            mode,
        })?;
        let grid = omega_grid(
            omega_for_tau_over_period(d, 0.05),
            omega_for_tau_over_period(d, 3.0),
            60,
            GridScale::Linear,
        );
        let points: Vec<_> = sweep_signal_ratio(&s, &grid)?
            .into_iter()
            .collect::<Result<_, _>>()?;

        println!("== {mode:?}");
        for p in points.iter().step_by(6) {
            let bar = "#".repeat((p.ratio * 20.0).round() as usize);
            println!("τ/T {:>5.2}  {:>6.3} {bar}", p.tau_over_t, p.ratio);
        }
        if let Ok(ext) = locate_extrema(&points) {
            for e in ext {
                println!(
                    "  {:?} at τ/T = {:.3}: {:.4}",
                    e.kind, e.tau_over_t, e.ratio
                );
            }
        }
    }
    Ok(())
}
