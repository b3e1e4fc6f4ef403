//! The `qae` binary: synthesize, simulate, transpile, route and benchmark the
//! amplitude-estimation circuit for the single-period bill valuation.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use qae_cli::config::Config;
use qae_cli::csvfmt::{distribution_csv, parse_scaling_csv, scaling_csv, BackendSeries, RunMeta};
use qae_cli::qasm;
use qae_cli::svg::scaling_svg;
use qae_core::bond::TBill;
use qae_core::qae::{build_qae, QaeProblem};
use qae_core::route::{
    builtin_coupling_map, parse_coupling_map, route, routed_two_qubit_count, CouplingMap,
};
use qae_core::scaling::{fit_quadratic, run_scaling, BackendSpec, QuadraticFit};
use qae_core::sim::{estimate_and_price, exact_distribution, sample_shots};
use qae_core::transpile::{transpile, NativeGateSet};
use qae_core::Circuit;

/// A bad or missing parameter: reported like a flag-parsing failure.
#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl std::error::Error for UsageError {}

const DEFAULT_P: f64 = 0.2;
const DEFAULT_EVAL_QUBITS: usize = 3;
const DEFAULT_SEED: u64 = 1234;
const DEFAULT_TRIALS: usize = 16;
const DEFAULT_BACKENDS: &str = "iontrap,ideal,tokyo,cairo";

#[derive(Parser)]
#[command(
    name = "qae",
    version,
    about = "Amplitude-estimation circuits for bill valuation: build, simulate, lower to native gate sets, route onto devices, and measure two-qubit-gate scaling"
)]
struct Cli {
    /// Optional key=value file supplying defaults for long flags; flags win.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize the estimation circuit and write it as QASM.
    Build {
        /// Probability to encode (default 0.2).
        #[arg(long)]
        p: Option<f64>,
        /// Evaluation-qubit count (default 3).
        #[arg(long = "eval-qubits")]
        eval_qubits: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate the estimation circuit and price the $0/$1 bill.
    Simulate {
        #[arg(long)]
        p: Option<f64>,
        #[arg(long = "eval-qubits")]
        eval_qubits: Option<usize>,
        /// Sample this many shots instead of reporting the exact masses.
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Write the distribution CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower a QASM circuit to a native gate set.
    Transpile {
        /// `superconducting` or `iontrap`.
        #[arg(long)]
        target: Option<String>,
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Route a QASM circuit onto a device topology.
    Route {
        /// `yorktown`, `tokyo`, `cairo` or `all-to-all`.
        #[arg(long)]
        device: Option<String>,
        /// Plain-text coupling map file overriding the built-ins.
        #[arg(long = "coupling-map", value_name = "FILE")]
        coupling_map: Option<PathBuf>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
    /// Run the two-qubit-gate scaling experiment across backends.
    Scale {
        /// Comma-separated backends (default iontrap,ideal,tokyo,cairo).
        #[arg(long)]
        backends: Option<String>,
        /// Smallest evaluation-qubit count (default 1).
        #[arg(long)]
        min: Option<usize>,
        /// Largest evaluation-qubit count (default 19).
        #[arg(long)]
        max: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        p: Option<f64>,
        /// CSV output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional SVG plot path.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Fit per-backend quadratics to a scaling CSV.
    Fit {
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

/// Flag value or config value; anything still missing is a usage error.
fn required<T>(cfg: &Config, flag: Option<T>, key: &str) -> Result<T>
where
    T: std::str::FromStr,
    T::Err: std::fmt::Display,
{
    cfg.resolve_opt(flag, key)?
        .ok_or_else(|| UsageError(format!("'--{key}' is required (flag or config)")).into())
}

fn read_circuit(path: &PathBuf) -> Result<Circuit> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(qasm::import(&text)?)
}

fn fit_all(groups: &BackendSeries) -> Result<Vec<(String, QuadraticFit)>> {
    let mut fits = Vec::new();
    for (name, triples) in groups {
        let points: Vec<(f64, f64)> = triples.iter().map(|&(n, mean, _)| (n, mean)).collect();
        let fit =
            fit_quadratic(&points, None).with_context(|| format!("fitting backend {name}"))?;
        fits.push((name.clone(), fit));
    }
    Ok(fits)
}

fn print_fit_table(fits: &[(String, QuadraticFit)]) {
    println!(
        "{:<16} {:>12} {:>12} {:>12} {:>10}",
        "backend", "a2", "a1", "a0", "R^2"
    );
    for (name, fit) in fits {
        println!(
            "{:<16} {:>12.4} {:>12.4} {:>12.4} {:>10.6}",
            name, fit.a2, fit.a1, fit.a0, fit.r_squared
        );
    }
}

fn run(cli: Cli) -> Result<()> {
    let cfg = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::empty(),
    };

    match cli.command {
        Command::Build {
            p,
            eval_qubits,
            out,
        } => {
            let p = cfg.resolve(p, "p", DEFAULT_P)?;
            let n = cfg.resolve(eval_qubits, "eval-qubits", DEFAULT_EVAL_QUBITS)?;
            let out = required(&cfg, out, "out")?;
            let problem = QaeProblem::new(p, n)?;
            let circuit = build_qae(&problem);
            std::fs::write(&out, qasm::export(&circuit))
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "wrote {} (p={p}, {n} evaluation qubits, width {}, {} gates)",
                out.display(),
                circuit.width(),
                circuit.len()
            );
        }

        Command::Simulate {
            p,
            eval_qubits,
            shots,
            seed,
            out,
        } => {
            let p = cfg.resolve(p, "p", DEFAULT_P)?;
            let n = cfg.resolve(eval_qubits, "eval-qubits", DEFAULT_EVAL_QUBITS)?;
            let shots = cfg.resolve_opt(shots, "shots")?;
            let seed = cfg.resolve(seed, "seed", DEFAULT_SEED)?;
            let out = cfg.resolve_opt(out, "out")?;
            let problem = QaeProblem::new(p, n)?;
            let circuit = build_qae(&problem);
            let dist = match shots {
                Some(shots) => sample_shots(&circuit, shots, seed)?,
                None => exact_distribution(&circuit, &problem)?,
            };
            let bill = TBill::new(1.0, 0.0, 1.0, p)?;
            let (p_hat, value) = estimate_and_price(&dist, &bill);
            let csv = distribution_csv(&dist, p, n);
            match out {
                Some(path) => {
                    std::fs::write(&path, csv)
                        .with_context(|| format!("writing {}", path.display()))?;
                    println!("wrote {}", path.display());
                    println!("mode estimate: {p_hat}");
                    println!("price ($0/$1 bill): ${value}");
                }
                None => {
                    print!("{csv}");
                    println!("# mode: {p_hat}");
                    println!("# price: ${value}");
                }
            }
        }

        Command::Transpile { target, input, out } => {
            let target = required(&cfg, target, "target")?;
            let input = required(&cfg, input, "in")?;
            let out = required(&cfg, out, "out")?;
            let circuit = read_circuit(&input)?;
            let target = NativeGateSet::by_name(&target)?;
            let lowered = transpile(&circuit, &target);
            std::fs::write(&out, qasm::export(&lowered))
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "wrote {} (target {}, two-qubit count {})",
                out.display(),
                target.name(),
                lowered.count_two_qubit_gates()
            );
        }

        Command::Route {
            device,
            coupling_map,
            trials,
            seed,
            input,
        } => {
            let input = required(&cfg, input, "in")?;
            let circuit = read_circuit(&input)?;
            let trials = cfg.resolve(trials, "trials", DEFAULT_TRIALS)?;
            let seed = cfg.resolve(seed, "seed", DEFAULT_SEED)?;
            let device_name = cfg.resolve_opt(device, "device")?;
            let map: CouplingMap = match (&coupling_map, device_name.as_deref()) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path)
                        .with_context(|| format!("reading {}", path.display()))?;
                    parse_coupling_map(&text)?
                }
                (None, Some("all-to-all")) => CouplingMap::complete(circuit.width()),
                (None, Some(name)) => builtin_coupling_map(name)?,
                (None, None) => {
                    return Err(UsageError("route needs --device or --coupling-map".into()).into())
                }
            };
            let routed = route(&circuit, &map, seed, trials)?;
            let total = routed_two_qubit_count(&routed, &NativeGateSet::superconducting());
            println!("device: {} ({} qubits)", map.name(), map.qubit_count());
            println!("seed: {seed}  trials: {trials}");
            println!("swap count: {}", routed.swap_count);
            println!("two-qubit total (superconducting): {total}");
        }

        Command::Scale {
            backends,
            min,
            max,
            trials,
            seed,
            p,
            out,
            plot,
        } => {
            let backends = cfg.resolve(backends, "backends", DEFAULT_BACKENDS.to_string())?;
            let n_min = cfg.resolve(min, "min", 1)?;
            let n_max = cfg.resolve(max, "max", 19)?;
            let trials = cfg.resolve(trials, "trials", DEFAULT_TRIALS)?;
            let seed = cfg.resolve(seed, "seed", DEFAULT_SEED)?;
            let p = cfg.resolve(p, "p", DEFAULT_P)?;
            let out = required(&cfg, out, "out")?;
            let plot = cfg.resolve_opt(plot, "plot")?;
            let specs = backends
                .split(',')
                .map(|name| BackendSpec::by_name(name.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let run = run_scaling(&specs, n_min, n_max, trials, seed, p)?;
            let meta = RunMeta { seed, trials, p };
            std::fs::write(&out, scaling_csv(&run, &meta))
                .with_context(|| format!("writing {}", out.display()))?;
            println!(
                "wrote {} ({} records, {} skipped)",
                out.display(),
                run.records.len(),
                run.skipped.len()
            );
            let groups: BackendSeries = specs
                .iter()
                .map(|s| {
                    (
                        s.name.clone(),
                        run.records
                            .iter()
                            .filter(|r| r.backend == s.name)
                            .map(|r| (r.n as f64, r.mean, r.sem))
                            .collect(),
                    )
                })
                .filter(|(_, pts): &(String, Vec<_>)| !pts.is_empty())
                .collect();
            let fits = fit_all(&groups)?;
            print_fit_table(&fits);
            if let Some(plot_path) = plot {
                let svg = scaling_svg(&run.records, &fits, &meta);
                std::fs::write(&plot_path, svg)
                    .with_context(|| format!("writing {}", plot_path.display()))?;
                println!("wrote {}", plot_path.display());
            }
        }

        Command::Fit { input } => {
            let input = required(&cfg, input, "in")?;
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let groups = parse_scaling_csv(&text)?;
            let fits = fit_all(&groups)?;
            print_fit_table(&fits);
        }
    }
    Ok(())
}
