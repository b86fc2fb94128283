//! `sixvertex` runs one experiment from a TOML config or an acceptance preset.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::Parser;
use sixvertex::harness::{acceptance_configs, all_pass, emit, render, run_experiment, ExperimentConfig, ExperimentKind, Format, CRITERIA};

#[derive(Parser, Debug)]
#[command(name = "sixvertex", version, about = "Run stochastic six-vertex experiments")]
struct Args {
    /// Experiment id (e1..e8, oracle, pde); uses its acceptance preset.
    #[arg(long, conflicts_with_all = ["config", "criterion"])]
    experiment: Option<ExperimentKind>,
    /// Path to a TOML experiment config.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Acceptance criterion number (1-10).
    #[arg(long, conflicts_with = "config")]
    criterion: Option<u32>,
    /// Override the master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the replica count.
    #[arg(long)]
    replicas: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format: csv or json-lines.
    #[arg(long)]
    format: Option<Format>,
    /// Record elapsed seconds per record.
    #[arg(long)]
    timing: bool,
    /// Print the resolved config as TOML and exit.
    #[arg(long)]
    dump_config: bool,
}

fn configs(args: &Args) -> anyhow::Result<Vec<ExperimentConfig>> {
    if let Some(path) = &args.config {
        return Ok(vec![ExperimentConfig::load(path).with_context(|| format!("loading {}", path.display()))?]);
    }
    if let Some(k) = args.criterion {
        if !(1..=CRITERIA.len() as u32).contains(&k) {
            bail!("criterion must be in 1..={}", CRITERIA.len());
        }
        return Ok(acceptance_configs(k));
    }
    if let Some(kind) = args.experiment {
        let k = (1..=CRITERIA.len() as u32)
            .find(|&k| acceptance_configs(k).iter().any(|c| c.experiment == kind))
            .context("no preset for this experiment")?;
        return Ok(acceptance_configs(k).into_iter().filter(|c| c.experiment == kind).collect());
    }
    bail!("pass one of --config, --experiment or --criterion")
}

fn run(args: Args) -> anyhow::Result<bool> {
    let mut cfgs = configs(&args)?;
    for c in &mut cfgs {
        if let Some(s) = args.seed {
            c.seed = s;
        }
        if let Some(r) = args.replicas {
            c.replicas = r;
        }
        if let Some(f) = args.format {
            c.format = f;
        }
        if args.out.is_some() {
            c.output = args.out.as_ref().map(|p| p.display().to_string());
        }
        c.timing |= args.timing;
    }
    if args.dump_config {
        for c in &cfgs {
            print!("{}", c.to_toml());
        }
        return Ok(true);
    }
    let format = cfgs[0].format;
    let mut records = Vec::new();
    for c in &cfgs {
        records.extend(run_experiment(c)?);
    }
    match cfgs[0].output.as_deref() {
        Some(path) => emit(&records, format, path.as_ref())?,
        None => print!("{}", render(&records, format)?),
    }
    Ok(all_pass(&records))
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
