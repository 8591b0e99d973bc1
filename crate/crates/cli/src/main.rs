use std::path::PathBuf;
use std::process::ExitCode;

use aperiodica::cps::SchemeConfig;
use aperiodica_cli::config::SetSpec;
use aperiodica_cli::{run, CliError, CliResult, ExperimentConfig, PipelineName};
use clap::{Args, Parser, Subcommand};
use serde_json::Value;

/// Cut-and-project sets, their averages, and gap certificates.
#[derive(Parser)]
#[command(name = "aperiodica", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a JSON experiment config.
    Run {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    Generate(Flags),
    Density(Flags),
    Mean(Flags),
    GapCert(Flags),
    TOperator(Flags),
    MeyerCheck(Flags),
    Counterexample(Flags),
    LiftCheck(Flags),
    Reconstruct(Flags),
}

/// Config fields as flags.
#[derive(Args)]
struct Flags {
    /// `golden`, `quadratic:ALPHA`, `padic:P[:K]`, `trivial`, or scheme JSON.
    #[arg(long)]
    scheme: Option<String>,
    /// Window as JSON, e.g. `{"intervals": [[0, 1]]}` or `{"residues": [[2, 1]]}`.
    #[arg(long)]
    window: Option<String>,
    /// Patch as JSON; conflicts with `--radius`.
    #[arg(long)]
    patch: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    radius: Option<i64>,
    #[arg(long)]
    horizon: Option<u64>,
    /// Sets `params.eps`.
    #[arg(long)]
    eps: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    /// `key=value` into `params`; the value is read as JSON, else as a string.
    #[arg(long = "param")]
    params: Vec<String>,
}

fn parse_scheme(s: &str) -> CliResult<SchemeConfig> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |x: &str| x.parse().map_err(|_| CliError::Config(format!("bad number {x:?} in --scheme")));
    Ok(match parts.as_slice() {
        ["golden"] => SchemeConfig::Quadratic { alpha: "golden".into() },
        ["quadratic", alpha] => SchemeConfig::Quadratic { alpha: alpha.to_string() },
        ["padic", p] => SchemeConfig::Padic { p: num(p)?, k: 12 },
        ["padic", p, k] => SchemeConfig::Padic { p: num(p)?, k: num(k)? as u32 },
        ["trivial"] => SchemeConfig::Trivial { spacing: None },
        _ => serde_json::from_str(s).map_err(|e| CliError::Config(format!("bad --scheme: {e}")))?,
    })
}

fn json_value(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()))
}

fn set_spec(flag: &str, s: &str) -> CliResult<SetSpec> {
    serde_json::from_str(s).map_err(|e| CliError::Config(format!("bad --{flag}: {e}")))
}

fn from_flags(pipeline: PipelineName, f: Flags) -> CliResult<(ExperimentConfig, Option<PathBuf>)> {
    let mut c = ExperimentConfig::new(pipeline);
    c.scheme = f.scheme.as_deref().map(parse_scheme).transpose()?;
    c.window = f.window.as_deref().map(|s| set_spec("window", s)).transpose()?;
    c.patch = f.patch.as_deref().map(|s| set_spec("patch", s)).transpose()?;
    c.radius = f.radius;
    c.horizon = f.horizon;
    c.seed = f.seed;
    let params = c.params.as_object_mut().expect("params start as an object");
    if let Some(eps) = f.eps {
        params.insert("eps".into(), json_value(&eps));
    }
    for kv in f.params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Config(format!("--param expects key=value, got {kv:?}")))?;
        params.insert(k.to_string(), json_value(v));
    }
    Ok((c, f.out))
}

fn execute(cli: Cli) -> CliResult<()> {
    let (config, out) = match cli.command {
        Command::Run { config, out, seed } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|source| CliError::Io { path: config.display().to_string(), source })?;
            let mut c = ExperimentConfig::from_json(&text)?;
            if let Some(seed) = seed {
                c.seed = seed;
            }
            (c, out)
        }
        Command::Generate(f) => from_flags(PipelineName::Generate, f)?,
        Command::Density(f) => from_flags(PipelineName::Density, f)?,
        Command::Mean(f) => from_flags(PipelineName::Mean, f)?,
        Command::GapCert(f) => from_flags(PipelineName::GapCert, f)?,
        Command::TOperator(f) => from_flags(PipelineName::TOperator, f)?,
        Command::MeyerCheck(f) => from_flags(PipelineName::MeyerCheck, f)?,
        Command::Counterexample(f) => from_flags(PipelineName::Counterexample, f)?,
        Command::LiftCheck(f) => from_flags(PipelineName::LiftCheck, f)?,
        Command::Reconstruct(f) => from_flags(PipelineName::Reconstruct, f)?,
    };
    let out = out.or_else(|| config.out.clone()).unwrap_or_else(|| PathBuf::from("out"));
    let summary = run(&config, &out)?;
    for f in &summary.files {
        println!("{}", f.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("APERIODICA_THREADS").ok().and_then(|v| v.parse().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
