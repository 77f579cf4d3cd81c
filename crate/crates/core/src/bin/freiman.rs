use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use freiman::bohr::bohr_set;
use freiman::bourgain::{birkhoff_metric, factor_two_audit, sandwich_audit, system_from_family, triangle_audit};
use freiman::config::Config;
use freiman::covering::{chang_cover, ruzsa_cover, CoverKind};
use freiman::error::Result;
use freiman::literal::{bohr_json, metric_dump, parse_set, spectrum_json, SystemSpec};
use freiman::pipeline::{run_freiman, FreimanConfig, Mode};
use freiman::set::growth_profile;
use freiman::spectrum::lspec;
use freiman::verify::{run_suite, Suite};

#[derive(Parser)]
#[command(name = "freiman", version, about = "Bohr sets, large spectra, covering lemmas and Freiman-type containment")]
struct Cli {
    /// Write the JSON output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// JSON configuration file (caps, tolerances, grid depths).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Seed for randomized instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoverMode {
    Ruzsa,
    Chang,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Paper,
    Empirical,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Fourier,
    Covering,
    Bohr,
    Bourgain,
    Pipeline,
}

#[derive(Subcommand)]
enum Command {
    /// Growth profile of a set against n^d.
    Analyze {
        set: PathBuf,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
    },
    /// Large spectrum of a set.
    Spectrum {
        set: PathBuf,
        #[arg(long)]
        delta: f64,
    },
    /// Bohr set of a frequency set.
    Bohr {
        #[arg(long)]
        freqs: PathBuf,
        #[arg(long)]
        radius: f64,
    },
    /// Ruzsa or Chang covering certificate.
    Cover {
        #[arg(long, value_enum)]
        mode: CoverMode,
        /// The set B.
        #[arg(long)]
        set: PathBuf,
        /// The auxiliary set B' (chang).
        #[arg(long)]
        aux: Option<PathBuf>,
        /// Chang parameter k.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Axiom audits and Birkhoff metric of a Bourgain system.
    Birkhoff {
        #[arg(long)]
        system: PathBuf,
        /// Include the per-element metric dump.
        #[arg(long)]
        dump: bool,
    },
    /// Run the containment pipeline on a set.
    Freiman {
        set: PathBuf,
        #[arg(long)]
        d: f64,
        #[arg(long, value_enum, default_value = "paper")]
        mode: ModeArg,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long)]
        l: Option<usize>,
        #[arg(long)]
        radius: Option<f64>,
    },
    /// Randomized self-check suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

/// Runs a command, returning its JSON output and whether every verdict passed.
fn execute(cli: &Cli, config: &Config) -> Result<(Value, bool)> {
    let cap = config.order_cap;
    match &cli.command {
        Command::Analyze { set, d, n_max } => {
            let profile = growth_profile(&parse_set(&read(set)?, cap)?, *d, *n_max)?;
            let ok = profile.hypothesis_holds();
            Ok((json!({ "hypothesis_holds": ok, "profile": profile }), ok))
        }
        Command::Spectrum { set, delta } => Ok((spectrum_json(&lspec(&parse_set(&read(set)?, cap)?, *delta)?), true)),
        Command::Bohr { freqs, radius } => Ok((bohr_json(&bohr_set(&parse_set(&read(freqs)?, cap)?, *radius)?), true)),
        Command::Cover { mode, set, aux, k } => {
            let b = parse_set(&read(set)?, cap)?;
            let cert = match mode {
                CoverMode::Ruzsa => ruzsa_cover(&b)?,
                CoverMode::Chang => {
                    let (Some(aux), Some(k)) = (aux, k) else {
                        return Err(freiman::error::Error::InvalidParameter(
                            "chang needs --aux <set.json> and --k <int>".into(),
                        ));
                    };
                    let b_prime = parse_set(&read(aux)?, cap)?;
                    chang_cover(&b, &b_prime, *k)?
                }
            };
            let ok = match cert.kind {
                CoverKind::Ruzsa => cert.is_valid(),
                CoverKind::Chang => cert.containment_verified && cert.size_bound_verified != Some(false),
            };
            Ok((serde_json::to_value(&cert)?, ok))
        }
        Command::Birkhoff { system, dump } => {
            let spec: SystemSpec = serde_json::from_str(&read(system)?)?;
            let g = spec.group.build(cap)?;
            let depth = spec.depth.or(config.bourgain_depth);
            let system = system_from_family(&g, &spec.family(&g)?, spec.d, depth)?;
            let metric = birkhoff_metric(&system);
            let factor_two = factor_two_audit(&metric);
            let sandwich = sandwich_audit(&metric)?;
            let triangle = triangle_audit(&metric);
            let clean = system.audit().clean();
            let ok = clean && factor_two.passes() && sandwich.iter().all(|v| v.passes()) && triangle.is_none();
            let mut out = json!({
                "group": g.cycles(),
                "d": system.d(),
                "depth": system.depth(),
                "axioms": system.audit(),
                "axioms_clean": clean,
                "factor_two": factor_two,
                "sandwich": sandwich,
                "triangle_violation": triangle.map(|(x, y)| [g.decode(x), g.decode(y)]),
            });
            if *dump {
                out["metric"] = metric_dump(&metric);
            }
            Ok((out, ok))
        }
        Command::Freiman { set, d, mode, epsilon, l, radius } => {
            let a = parse_set(&read(set)?, cap)?;
            let cfg = FreimanConfig {
                d: *d,
                mode: match mode {
                    ModeArg::Paper => Mode::Paper,
                    ModeArg::Empirical => Mode::Empirical,
                },
                l: *l,
                epsilon: *epsilon,
                radius: *radius,
                ratio_bound: None,
                c: config.c,
                n_scan: config.n_scan,
                max_retries: config.max_retries,
                dim_depth: config.dim_depth,
            };
            let report = run_freiman(&a, &cfg)?;
            Ok((serde_json::to_value(&report)?, report.passes()))
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::All => Suite::All,
                SuiteArg::Fourier => Suite::Fourier,
                SuiteArg::Covering => Suite::Covering,
                SuiteArg::Bohr => Suite::Bohr,
                SuiteArg::Bourgain => Suite::Bourgain,
                SuiteArg::Pipeline => Suite::Pipeline,
            };
            let report = run_suite(suite, cli.seed, config)?;
            Ok((serde_json::to_value(&report)?, report.passes()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match cli.config.as_deref().map(Config::load).transpose() {
        Ok(c) => c.unwrap_or_default(),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let (value, ok) = match execute(&cli, &config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("JSON values serialize");
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
