//! Mean covered users as the share of the less demanding class grows, total
//! density fixed.
//!
//! cargo run --release --example density_sweep

use uavbs::algorithms::Algorithm;
use uavbs::sim::{sweep_rho, Scenario};

fn main() -> uavbs::Result<()> {
    let scenario = Scenario::urban_reference(1.0)?;
    let rhos = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0];
    let sweep = sweep_rho(&scenario, &rhos)?;

    println!("{:>6} {:>8} {:>8} {:>8} {:>8}", "rho", "ES", "MWA", "LQ", "ES-LQ");
    for rho in rhos {
        let get = |alg| sweep.iter().find(|p| p.rho == rho && p.algorithm == alg).map(|p| p.mean_covered).unwrap();
        let (es, mwa, lq) = (get(Algorithm::Es), get(Algorithm::Mwa), get(Algorithm::Lq));
        println!("{rho:>6} {es:>8.2} {mwa:>8.2} {lq:>8.2} {:>8.2}", es - lq);
    }
    Ok(())
}
