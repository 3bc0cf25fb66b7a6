//! The weighted-area objective behind MWA and where its derivative vanishes.
//!
//! cargo run --example mwa_altitude

use uavbs::algorithms::{average_covered, mwa_altitude, mwa_derivative};
use uavbs::radius::altitude_bracket;
use uavbs::sim::Scenario;

fn main() -> uavbs::Result<()> {
    for rho in [0.5, 1.0, 4.0] {
        let s = Scenario::urban_reference(rho)?;
        let bracket = altitude_bracket(&s.classes, &s.env, &s.radio)?;
        let h = mwa_altitude(&s.classes, &s.env, &s.radio, &bracket)?;
        println!(
            "rho {rho}: bracket [{:.1}, {:.1}] m, MWA altitude {h:.2} m, expected covered {:.2}",
            bracket.h_lo,
            bracket.h_hi,
            average_covered(h, &s.classes, &s.env, &s.radio)
        );
        for step in 0..=4 {
            let x = bracket.h_lo + step as f64 * (bracket.h_hi - bracket.h_lo) / 4.0;
            println!(
                "    h {x:7.1}  N_avg {:6.2}  d(sum lambda R^2)/dh {:+.4e}",
                average_covered(x, &s.classes, &s.env, &s.radio),
                mwa_derivative(x, &s.classes, &s.env, &s.radio)
            );
        }
    }
    Ok(())
}
