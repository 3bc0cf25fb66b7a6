//! Optimal elevation angle, best altitude per SNR class, and how the coverage
//! radius varies with altitude.
//!
//! cargo run --example coverage_radius

use uavbs::channel::{Environment, QosClass, RadioConfig};
use uavbs::radius::{altitude_bracket, coverage_radius, optimal_elevation, optimal_pair};

fn main() -> uavbs::Result<()> {
    let env = Environment::urban();
    let radio = RadioConfig::new(2e9, 30.0, -120.0)?;
    println!("optimal elevation angle: {:.4} deg", optimal_elevation(&env));

    let classes = [QosClass::new(1, 50.0, 5.5, &radio)?, QosClass::new(2, 47.0, 5.5, &radio)?];
    for c in &classes {
        let best = optimal_pair(c.l_th, &env, &radio)?;
        println!(
            "class {}: gamma {} dB, l_th {:.1} dB -> h* {:.2} m, R* {:.2} m",
            c.id, c.gamma_th, c.l_th, best.h_star, best.r_star
        );
    }
    let bracket = altitude_bracket(&classes, &env, &radio)?;
    println!("altitude bracket: [{:.2}, {:.2}] m", bracket.h_lo, bracket.h_hi);

    println!("\n{:>8} {:>12} {:>12}", "h_m", "R_class1_m", "R_class2_m");
    for h in [100.0, 300.0, 500.0, bracket.h_lo, 800.0, bracket.h_hi, 1200.0, 2000.0] {
        let r1 = coverage_radius(h, classes[0].l_th, &env, &radio)?;
        let r2 = coverage_radius(h, classes[1].l_th, &env, &radio)?;
        println!("{h:>8.1} {r1:>12.2} {r2:>12.2}");
    }

    // Environments other than urban take user-supplied constants.
    let high_rise = Environment::new(27.23, 0.08, 2.3, 34.0)?;
    println!("\nhigh-rise optimal elevation: {:.4} deg", optimal_elevation(&high_rise));
    Ok(())
}
