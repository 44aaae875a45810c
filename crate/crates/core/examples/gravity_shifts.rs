//! Frequency shifts of a photon crossing a mirror pair in a uniform field,
//! and the free-fall received frequency from the retarded-time solver.
//!
//!     cargo run --example gravity_shifts

use mirrorpair::formulary::{delay_displacement, gravity_shifts, planck_length};
use mirrorpair::{make_scenario, received_frequency_shift, LegMode, ScenarioConfig, Trajectory};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (omega0, g, d, span, mass) = (2.975752870946055e15, 0.1, 0.1, 1.0, 1.0);
    let shifts = gravity_shifts(omega0, g, d, span, mass)?;
    println!("Δω_EP          = {:.6e} rad/s", shifts.d_omega_ep);
    println!(
        "Δω_displaced   = {:.6e} rad/s ({:.4e} of ω₀)",
        shifts.d_omega_displaced,
        shifts.d_omega_displaced / omega0
    );
    println!("Δω_L           = {:.6e} rad/s", shifts.d_omega_l);
    println!("residual       = {:e}", shifts.residual);

    let s = make_scenario(&ScenarioConfig {
        span,
        d0: 0.5,
        separation: d,
        omega0,
        mass,
        trajectory: Trajectory::FreeFall {
            acceleration: g,
            initial_speed: 0.0,
        },
        mode: LegMode::Geometric,
    })?;
    println!(
        "solver, falling pair: {:.6e} rad/s",
        received_frequency_shift(&s, 0.0, None)?
    );

    let dx = delay_displacement(d, omega0, mass)?;
    println!("δX = {dx:.4e} m = {:.4} L_P", dx / planck_length());
    Ok(())
}
