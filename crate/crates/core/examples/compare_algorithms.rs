//! ES, MWA and LQ on one synthetic user drop.
//!
//! cargo run --release --example compare_algorithms [rho]

use uavbs::algorithms::{solve, Algorithm, LqMode, SolveOptions};
use uavbs::sim::{generate_users, Scenario};

fn main() -> uavbs::Result<()> {
    let rho: f64 = std::env::args().nth(1).map_or(1.0, |s| s.parse().expect("rho must be a number"));
    let scenario = Scenario::urban_reference(rho)?;
    let users = generate_users(&scenario, 0)?;
    println!("{} users in {} km², rho {rho}", users.len(), scenario.area_km2());

    for (alg, mode) in [
        (Algorithm::Es, LqMode::Fair),
        (Algorithm::Mwa, LqMode::Fair),
        (Algorithm::Lq, LqMode::Fair),
        (Algorithm::Lq, LqMode::Strict),
    ] {
        let opts = SolveOptions { lq_mode: mode, ..SolveOptions::default() };
        let r = solve(alg, &users, &scenario.classes, &scenario.env, &scenario.radio, &opts)?;
        let label = if alg == Algorithm::Lq { format!("{alg} ({mode:?})") } else { alg.to_string() };
        println!(
            "{label:<12} covered {:>3}  per class {:?}  h {:7.2} m  center ({:7.1}, {:7.1})  {:.3} ms",
            r.covered_count,
            r.per_class.values().collect::<Vec<_>>(),
            r.h,
            r.x_d,
            r.y_d,
            r.runtime_s * 1e3
        );
    }
    Ok(())
}
