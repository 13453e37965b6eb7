use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hurwitz_cli::{execute, write_artifacts, CliError, ExperimentConfig, Task};

/// Run a Hurwitz-orbit experiment described by a JSON config.
#[derive(Debug, Parser)]
#[command(name = "hurwitz", version)]
struct Args {
    /// Experiment config (JSON). Optional for `--task verify`.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Task to run, overriding the config's task.
    #[arg(long)]
    task: Option<Task>,
    /// Worker threads for orbit expansion (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// Directory for output files.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Seed for the randomized checks.
    #[arg(long)]
    seed: Option<u64>,
}

fn load(args: &Args) -> Result<ExperimentConfig, CliError> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::parse(&std::fs::read_to_string(path)?)?,
        None if args.task == Some(Task::Verify) => ExperimentConfig::parse(r#"{"task": "verify"}"#)?,
        None => return Err(CliError::Validation("--config is required".into())),
    };
    if let Some(t) = args.task {
        config.task = t;
    }
    if let Some(s) = args.seed {
        config.params.seed = s;
    }
    Ok(config)
}

fn run(args: &Args) -> Result<i32, CliError> {
    if let Some(n) = args.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Internal(e.to_string()))?;
    }
    let config = load(args)?;
    let artifacts = execute(&config)?;
    let written = write_artifacts(&config, &artifacts, &args.out)?;
    if config.task != Task::Verify {
        println!("{}", serde_json::to_string_pretty(&artifacts.json).expect("json"));
    }
    for path in written {
        eprintln!("wrote {}", path.display());
    }
    Ok(artifacts.exit)
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
