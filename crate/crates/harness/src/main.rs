use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use entspan_core::classicality::{classify, predict_zero_concurrence};
use entspan_core::effective::{effective_ground_state, effective_hamiltonian, second_order_effective};
use entspan_core::entanglement::{concurrence, discord, zero_discord_test, DiscordOptions};
use entspan_core::exact::{ground_state_dm, reduced_ground_state, to_dense, DEFAULT_DEGENERACY_TOL};
use entspan_core::model::{ChainModel, ProbePair};
use entspan_harness::config::{ExperimentConfig, SolverChoice};
use entspan_harness::experiments::FULL_SCALE_SAMPLES;
use entspan_harness::{emit_csv, emit_json, presets};

#[derive(Parser)]
#[command(name = "entspan", version, about = "Long-distance entanglement experiments on spin chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment config and write <experiment>.csv and .json.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        solver: Option<SolverChoice>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        threads: Option<usize>,
        /// Use the full 10^7-sample disorder average (hours of CPU time).
        #[arg(long)]
        full_scale: bool,
    },
    /// Search for a classical split of the probe interaction.
    Classify {
        model: PathBuf,
        /// Probe sites, 1-based; defaults to the chain ends.
        #[arg(long, value_delimiter = ',', num_args = 2)]
        probes: Option<Vec<usize>>,
    },
    /// Second-order effective Hamiltonian after tracing out mediator sites.
    Effective {
        model: PathBuf,
        /// Mediator sites, 1-based.
        #[arg(long, value_delimiter = ',', required = true)]
        mediator: Vec<usize>,
    },
    /// Entanglement and discord of the end spins of X1X2 + X2X3 + h1 Z1 + h3 Z3.
    DiscordAppendix {
        #[arg(long, default_value_t = 1.0)]
        h1z: f64,
        #[arg(long)]
        h3z: Option<f64>,
    },
    /// Print a preset model as JSON.
    Model {
        preset: String,
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
        #[arg(long, default_value_t = 1.0)]
        h0: f64,
        #[arg(long, default_value_t = 1)]
        alpha: i8,
        #[arg(long, default_value_t = 0.25)]
        j: f64,
        #[arg(long, default_value_t = 0.05)]
        amplitude: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dump the dense Hamiltonian or probe state of a model as JSON.
    Dump {
        model: PathBuf,
        #[arg(long, value_enum, default_value_t = DumpKind::Hamiltonian)]
        kind: DumpKind,
        #[arg(long, value_delimiter = ',', num_args = 2)]
        probes: Option<Vec<usize>>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum DumpKind {
    Hamiltonian,
    GroundState,
    ProbeState,
}

fn load_model(path: &PathBuf) -> Result<ChainModel> {
    let s = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ChainModel::from_json_str(&s)?)
}

fn probes_arg(p: &Option<Vec<usize>>, n: usize) -> Result<ProbePair> {
    Ok(match p.as_deref() {
        None => ProbePair::ends(n)?,
        Some([a, b]) if *a >= 1 && *b >= 1 => ProbePair::new(a - 1, b - 1, n)?,
        Some(other) => bail!("probes are two 1-based sites, got {other:?}"),
    })
}

fn run_config(
    path: PathBuf,
    out: Option<PathBuf>,
    seed: Option<u64>,
    solver: Option<SolverChoice>,
    samples: Option<usize>,
    threads: Option<usize>,
    full_scale: bool,
) -> Result<ExitCode> {
    let mut cfg = ExperimentConfig::from_path(&path)?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(s) = solver {
        cfg.solver = s;
    }
    if let Some(n) = samples {
        cfg.samples = Some(n);
    }
    if full_scale {
        log::warn!("full-scale run: {FULL_SCALE_SAMPLES} samples per point");
        cfg.samples = Some(FULL_SCALE_SAMPLES);
    }
    if threads.is_some() {
        cfg.threads = threads;
    }
    let out = out.or_else(|| cfg.out_dir.clone()).unwrap_or_else(|| PathBuf::from("out"));
    cfg.validate()?;
    let record = entspan_harness::run(&cfg)?;
    std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;
    let stem = cfg.experiment.name();
    emit_csv(&record, &out.join(format!("{stem}.csv")))?;
    emit_json(&record, &out.join(format!("{stem}.json")))?;
    println!("{stem}: {} rows, {:.1}s, written to {}", record.rows.len(), record.wall_time_s, out.display());
    if record.excluded_samples > 0 {
        println!("excluded {} of {} samples: {:?}", record.excluded_samples, record.requested_samples, record.exclusions);
    }
    for (k, v) in &record.scalars {
        println!("  {k} = {v:.6e}");
    }
    for note in &record.notes {
        println!("note: {note}");
    }
    for e in &record.expectations {
        let v = e.value.map_or("missing".to_string(), |v| format!("{v:.6e}"));
        println!("[{}] {} {} (got {v})", if e.pass { "PASS" } else { "FAIL" }, e.target, e.criterion);
    }
    Ok(if record.all_expectations_pass() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn main() -> Result<ExitCode> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match Cli::parse().command {
        Command::Run { config, out, seed, solver, samples, threads, full_scale } => {
            return run_config(config, out, seed, solver, samples, threads, full_scale)
        }
        Command::Classify { model, probes } => {
            let m = load_model(&model)?;
            let p = probes_arg(&probes, m.n_sites())?;
            let (terms, verdict) = classify(&m, p)?;
            println!("interaction terms:");
            for (k, t) in terms.iter().enumerate() {
                println!("  [{k}] {t}");
            }
            println!("{verdict}");
        }
        Command::Effective { model, mediator } => {
            let m = load_model(&model)?;
            if mediator.iter().any(|&s| s == 0 || s > m.n_sites()) {
                bail!("mediator sites are 1-based and at most {}", m.n_sites());
            }
            let med: Vec<usize> = mediator.iter().map(|s| s - 1).collect();
            let eff = effective_hamiltonian(&m, &med)?;
            println!(
                "retained sites (1-based): {:?}",
                eff.retained.iter().map(|s| s + 1).collect::<Vec<_>>()
            );
            println!("mediator gap {:.6e}, |H_couple|/gap {:.3e}", eff.split.gap, eff.split.h1_over_gap());
            if eff.retained.len() == 2 {
                let p = ProbePair::new(eff.retained[0], eff.retained[1], m.n_sites())?;
                let h = second_order_effective(&m, p, &med)?;
                println!("{}", serde_json::to_string_pretty(&h)?);
                if predict_zero_concurrence(&m, p)? {
                    let norm = h.j.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
                    let verdict = if norm < 1e-12 { "vanishes" } else { "does not vanish" };
                    println!("classical interaction; effective exchange norm {norm:.3e} {verdict}");
                }
            } else {
                println!("{}", eff.total()?.to_json_string()?);
            }
            let rho = effective_ground_state(&eff)?;
            if rho.n_sites() == 2 {
                println!("effective ground-state concurrence {:.6e}", concurrence(&rho)?);
            }
        }
        Command::DiscordAppendix { h1z, h3z } => {
            let h3z = h3z.unwrap_or(h1z);
            let op = to_dense(&presets::ising_chain(h1z, h3z)?)?;
            let rho = reduced_ground_state(&op, &[0, 2], DEFAULT_DEGENERACY_TOL)?;
            println!("rho_13 (basis |00>, |01>, |10>, |11>, |0> = spin up):");
            for i in 0..4 {
                let row: Vec<String> = (0..4).map(|j| format!("{:>9.5}", rho.get(i, j).re)).collect();
                println!("  {}", row.join(" "));
            }
            println!("concurrence {:.3e}", concurrence(&rho)?);
            let d = discord(&rho, &DiscordOptions::default())?;
            println!("mutual information {:.6}, discord {:.6}", d.mutual_info, d.discord);
            let check = zero_discord_test(&rho, DiscordOptions::default().zero_discord_tol)?;
            match check.witness {
                Some(w) => {
                    println!("zero-discord test fails: {w}");
                    println!("  product {:?}", w.product.map(|r| r.map(|z| z.0)));
                }
                None => println!("zero-discord test passes"),
            }
        }
        Command::Model { preset, n, gamma, h0, alpha, j, amplitude, seed } => {
            let m = match preset.as_str() {
                "classical-chain" => presets::classical_chain()?,
                "non-classical-chain" => presets::non_classical_chain()?,
                "ising-chain" => presets::ising_chain(1.0, 1.0)?,
                "theorem2-environment" => presets::theorem2_environment(h0)?,
                "xy-demo" => presets::xy_demo(n, gamma, h0)?,
                "xy-demo-effective" => presets::xy_demo_effective(n, gamma, h0)?,
                "xy-enhancement" | "xy-uniform" => presets::xy_uniform(n, gamma, alpha, h0)?,
                "random-coupling" => presets::random_coupling(n, j, amplitude, seed, 0)?,
                other => bail!("unknown preset `{other}`; expected one of {:?}", presets::PRESETS),
            };
            println!("{}", m.to_json_string()?);
        }
        Command::Dump { model, kind, probes } => {
            let m = load_model(&model)?;
            let op = to_dense(&m)?;
            let dump = match kind {
                DumpKind::Hamiltonian => op.dump(),
                DumpKind::GroundState => ground_state_dm(&op, DEFAULT_DEGENERACY_TOL)?.dump(),
                DumpKind::ProbeState => {
                    let p = probes_arg(&probes, m.n_sites())?;
                    reduced_ground_state(&op, &[p.a, p.b], DEFAULT_DEGENERACY_TOL)?.dump()
                }
            };
            println!("{}", serde_json::to_string(&dump)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}
