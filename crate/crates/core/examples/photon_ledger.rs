//! Center-of-mass bookkeeping for a stream of photons crossing a 1 kg pair on
//! a 10 kg frame.
//!
//!     cargo run --example photon_ledger [n_photons]

use mirrorpair::formulary::{photon_stream_ledger, single_photon_rate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: u64 = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(1_000_000);
    let r = photon_stream_ledger(n, 2.975752870946055e15, 0.1, 1.0, 10.0, 1e-6)?;
    println!("photons                  {}", r.n_photons);
    println!("platform displacement    {:.4e} m", r.platform_disp);
    println!("frame displacement       {:.4e} m", r.frame_disp);
    println!("c.m. residual            {:e} m", r.cm_residual);
    println!("classical prediction     {:e} m", r.classical_platform_disp);
    println!(
        "absorption-equivalent    {:.4e} s",
        r.absorbed_recoil_equiv_time
    );
    println!(
        "one photon in flight at  {:.4e} photons/s",
        single_photon_rate(0.1)?
    );
    Ok(())
}
