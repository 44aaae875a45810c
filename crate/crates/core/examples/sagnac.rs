//! Sagnac phase between counter-propagating beams: closed form against the
//! difference of two numerical traversals.
//!
//!     cargo run --example sagnac

use mirrorpair::formulary::{sagnac_phase, Particle};
use mirrorpair::solver::sagnac_difference;
use mirrorpair::{make_scenario, LegMode, ScenarioConfig, Trajectory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let photon = Particle::photon_wavelength(633e-9)?;
    let Particle::Photon { omega0 } = photon else {
        unreachable!()
    };
    for v in [1e-6, 1e-3, 1.0] {
        let s = make_scenario(&ScenarioConfig {
            span: 1.0,
            d0: 0.5,
            separation: 0.1,
            omega0,
            mass: 1.0,
            trajectory: Trajectory::Uniform { speed: v },
            mode: LegMode::Geometric,
        })?;
        let cf = sagnac_phase(&photon, 0.1, v)?;
        let num = sagnac_difference(&s, 0.0)?;
        println!("V = {v:e} m/s: 4DkV/c = {cf:.6e} rad, solver = {num:.6e} rad");
    }
    Ok(())
}
