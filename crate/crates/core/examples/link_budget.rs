//! Mean air-to-ground path loss and SNR for a few UAV/user geometries.
//!
//! cargo run --example link_budget

use uavbs::channel::{elevation_deg, los_probability, mean_path_loss, mean_snr, Environment, RadioConfig};

fn main() -> uavbs::Result<()> {
    let env = Environment::urban();
    let radio = RadioConfig::new(2e9, 30.0, -120.0)?;

    println!("{:>8} {:>8} {:>10} {:>8} {:>10} {:>8}", "h_m", "r_m", "elev_deg", "p_los", "loss_db", "snr_db");
    for (h, r) in [(100.0, 0.0), (100.0, 500.0), (646.5, 707.0), (1000.0, 300.0), (300.0, 2000.0)] {
        let theta = elevation_deg(h, r);
        println!(
            "{h:>8.1} {r:>8.1} {theta:>10.3} {:>8.4} {:>10.3} {:>8.3}",
            los_probability(theta, &env)?,
            mean_path_loss(h, r, &env, &radio)?,
            mean_snr(h, r, &env, &radio)?,
        );
    }
    Ok(())
}
