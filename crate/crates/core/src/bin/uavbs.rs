use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use uavbs::channel::{Environment, RadioConfig};
use uavbs::cli::{self, Overrides, RadiusArgs, ScenarioFile, Threshold};
use uavbs::{Error, Result};

#[derive(Parser)]
#[command(name = "uavbs", version, about = "UAV base station placement for users with different SNR requirements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunFlags {
    /// Scenario file (TOML).
    #[arg(long)]
    scenario: PathBuf,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Count LQ coverage against the strictest radius for every user.
    #[arg(long)]
    strict_lq: bool,
    /// Draw round(λ·area) users instead of a Poisson count.
    #[arg(long)]
    fixed_count: bool,
    /// Override the scenario's master seed.
    #[arg(long)]
    seed: Option<u64>,
}

impl RunFlags {
    fn overrides(&self) -> Overrides {
        Overrides {
            seed: self.seed,
            fixed_count: self.fixed_count,
            strict_lq: self.strict_lq,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Optimal altitude and coverage radius for one SNR requirement.
    Radius {
        /// Required mean SNR, dB.
        #[arg(long, conflicts_with = "l_th_db", required_unless_present = "l_th_db")]
        gamma_th_db: Option<f64>,
        /// Path-loss threshold, dB.
        #[arg(long)]
        l_th_db: Option<f64>,
        /// Also report the coverage radius at this altitude, m.
        #[arg(long)]
        altitude_m: Option<f64>,
        /// Take environment and radio settings from a scenario file.
        #[arg(long)]
        scenario: Option<PathBuf>,
        #[arg(long, default_value_t = 2e9)]
        fc_hz: f64,
        #[arg(long, default_value_t = 30.0, allow_negative_numbers = true)]
        pt_dbm: f64,
        #[arg(long, default_value_t = -120.0, allow_negative_numbers = true)]
        pn_dbm: f64,
    },
    /// Run the scenario's algorithms once.
    Place {
        #[command(flatten)]
        run: RunFlags,
        /// Users CSV with header x_m,y_m,class_id; synthetic users otherwise.
        #[arg(long)]
        users: Option<PathBuf>,
    },
    /// Monte Carlo trials with covered-user and runtime CDFs.
    Simulate {
        #[command(flatten)]
        run: RunFlags,
    },
    /// Mean covered users versus the density ratio λ2/λ1.
    Sweep {
        #[command(flatten)]
        run: RunFlags,
        /// Comma-separated density ratios.
        #[arg(long, default_value = "0.5,1,2,4")]
        rho: String,
    },
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Radius {
            gamma_th_db,
            l_th_db,
            altitude_m,
            scenario,
            fc_hz,
            pt_dbm,
            pn_dbm,
        } => {
            let (env, radio) = match scenario {
                Some(p) => {
                    let f = ScenarioFile::from_path(&p)?;
                    let radio = RadioConfig::new(f.radio.fc_hz, f.radio.pt_dbm, f.radio.pn_dbm)?;
                    (f.environment.to_environment()?, radio)
                }
                None => (Environment::urban(), RadioConfig::new(fc_hz, pt_dbm, pn_dbm)?),
            };
            let threshold = match (gamma_th_db, l_th_db) {
                (Some(g), _) => Threshold::GammaDb(g),
                (None, Some(l)) => Threshold::LossDb(l),
                (None, None) => return Err(Error::Input("one of gamma_th_db or l_th_db is required".into())),
            };
            let report = cli::cmd_radius(&RadiusArgs {
                threshold,
                altitude_m,
                env,
                radio,
            })?;
            println!("{report}");
        }
        Command::Place { run, users } => {
            let file = ScenarioFile::from_path(&run.scenario)?;
            let doc = cli::cmd_place(&file, &run.overrides(), users.as_deref(), &run.out)?;
            for r in &doc.trials {
                println!(
                    "{:<4} covered {:>4}/{:<4} h {:>8.2} m  center ({:.2}, {:.2})  {:.3} ms",
                    r.algorithm,
                    r.covered,
                    r.total_users,
                    r.h,
                    r.x_d,
                    r.y_d,
                    r.runtime_s * 1e3
                );
            }
        }
        Command::Simulate { run } => {
            let file = ScenarioFile::from_path(&run.scenario)?;
            let doc = cli::cmd_simulate(&file, &run.overrides(), &run.out)?;
            for s in &doc.summaries {
                println!(
                    "{:<4} mean covered {:>8.3} ± {:.3}  mean runtime {:.3} ms  ({} trials)",
                    s.algorithm,
                    s.mean_covered,
                    s.stderr_covered,
                    s.mean_runtime_s * 1e3,
                    s.trials
                );
            }
        }
        Command::Sweep { run, rho } => {
            let file = ScenarioFile::from_path(&run.scenario)?;
            let rho = cli::parse_rho_list(&rho)?;
            let doc = cli::cmd_sweep(&file, &run.overrides(), &rho, &run.out)?;
            for p in &doc.sweep {
                println!("rho {:<6} {:<4} {:>8.3} ± {:.3}", p.rho, p.algorithm, p.mean_covered, p.stderr);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
