//! Closed-form transit phases for a photon and a neutron, and how far the
//! numerical traversal sits from them.
//!
//!     cargo run --example closed_form_phases

use mirrorpair::formulary::{closed_form_phase, Particle};
use mirrorpair::{make_scenario, traverse, LegMode, ScenarioConfig, Trajectory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (span, d0, d) = (1.0, 0.5, 0.1);
    let photon = Particle::photon_wavelength(633e-9)?;
    let neutron = Particle::massive(1.675e-27, 1e3)?;

    println!(
        "{:>10} {:>22} {:>22} {:>10}",
        "V (m/s)", "closed form (rad)", "numerical (rad)", "rel. diff"
    );
    for v in [0.0, 1e-3, 1.0, 300.0] {
        let cf = closed_form_phase(&photon, span, d, v)?;
        let s = make_scenario(&ScenarioConfig {
            span,
            d0,
            separation: d,
            omega0: photon_omega(&photon),
            mass: 1.0,
            trajectory: Trajectory::Uniform { speed: v },
            mode: LegMode::Geometric,
        })?;
        let num = traverse(&s, 0.0)?.phase;
        println!(
            "{v:>10.0e} {cf:>22.12} {num:>22.12} {:>10.1e}",
            ((num - cf) / cf).abs()
        );
    }

    let phi = closed_form_phase(&neutron, span, d, 1e-3)?;
    println!("neutron at 1 km/s, platform 1 mm/s: {phi:.6e} rad");
    Ok(())
}

fn photon_omega(p: &Particle) -> f64 {
    match *p {
        Particle::Photon { omega0 } => omega0,
        Particle::Massive { .. } => unreachable!(),
    }
}
