//! Runs experiment configs and writes `results.json`, `points.csv` and
//! `strip.svg`.

pub mod config;
pub mod error;
pub mod pipelines;
pub mod svg;

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::json;

pub use config::{ExperimentConfig, PipelineName, SCHEMA_VERSION};
pub use error::{CliError, CliResult};
pub use pipelines::{run_pipeline, Outcome};

/// What a run wrote.
#[derive(Clone, Debug)]
pub struct RunSummary {
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub all_ok: bool,
}

/// `results.json` as written for a finished pipeline.
pub fn results_document(config: &ExperimentConfig, outcome: &Outcome) -> String {
    let checks: serde_json::Map<String, serde_json::Value> =
        outcome.checks.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
    let doc = json!({
        "schema_version": SCHEMA_VERSION,
        "pipeline": config.pipeline,
        "seed": config.seed,
        "config": config,
        "results": outcome.results,
        "checks": checks,
        "all_ok": outcome.checks.iter().all(|c| c.1),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// Runs the pipeline and writes its artifacts. Outputs are written before a
/// failed check is reported, so they can be inspected.
pub fn run(config: &ExperimentConfig, out_dir: &Path) -> CliResult<RunSummary> {
    let outcome = run_pipeline(config)?;
    fs::create_dir_all(out_dir).map_err(|source| CliError::Io { path: out_dir.display().to_string(), source })?;
    let mut files = vec![out_dir.join("results.json")];
    write(&files[0], &results_document(config, &outcome))?;
    if let Some(csv) = &outcome.points_csv {
        let p = out_dir.join("points.csv");
        write(&p, csv)?;
        files.push(p);
    }
    if let Some(svg) = &outcome.svg {
        let p = out_dir.join("strip.svg");
        write(&p, svg)?;
        files.push(p);
    }
    let failed: Vec<&str> = outcome.checks.iter().filter(|c| !c.1).map(|c| c.0.as_str()).collect();
    if !failed.is_empty() {
        return Err(CliError::CheckFailed(failed.join(", ")));
    }
    Ok(RunSummary { out_dir: out_dir.to_path_buf(), files, all_ok: true })
}
