//! Monte Carlo comparison of the three algorithms with covered-user CDFs.
//!
//! cargo run --release --example monte_carlo [trials]

use uavbs::algorithms::Algorithm;
use uavbs::sim::{cdf, run_trials, samples, summarize, Scenario};

fn main() -> uavbs::Result<()> {
    let mut scenario = Scenario::urban_reference(1.0)?;
    if let Some(t) = std::env::args().nth(1) {
        scenario.trials = t.parse().expect("trials must be an integer");
    }
    let records = run_trials(&scenario)?;

    for s in summarize(&records) {
        println!(
            "{:<4} mean covered {:6.2} ± {:.2}   mean runtime {:.3} ms",
            s.algorithm,
            s.mean_covered,
            s.stderr_covered,
            s.mean_runtime_s * 1e3
        );
    }

    println!("\ncovered-user quantiles");
    println!("{:<4} {:>6} {:>6} {:>6} {:>6} {:>6}", "alg", "10%", "25%", "50%", "75%", "90%");
    for alg in Algorithm::ALL {
        let c = cdf(&samples(&records, alg).0)?;
        let q: Vec<String> = [0.1, 0.25, 0.5, 0.75, 0.9].iter().map(|&p| format!("{:>6}", c.quantile(p))).collect();
        println!("{:<4} {}", alg, q.join(" "));
    }
    Ok(())
}
