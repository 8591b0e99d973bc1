use std::path::PathBuf;

use aperiodica::cps::{Scheme, SchemeConfig};
use aperiodica::groups::{Atom, SetDescriptor, SpaceDescriptor};
use aperiodica::numeric::parse_rational;
use aperiodica::Real;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PipelineName {
    Generate,
    Density,
    Mean,
    GapCert,
    TOperator,
    MeyerCheck,
    Counterexample,
    LiftCheck,
    Reconstruct,
}

impl PipelineName {
    pub const ALL: [PipelineName; 9] = [
        PipelineName::Generate,
        PipelineName::Density,
        PipelineName::Mean,
        PipelineName::GapCert,
        PipelineName::TOperator,
        PipelineName::MeyerCheck,
        PipelineName::Counterexample,
        PipelineName::LiftCheck,
        PipelineName::Reconstruct,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PipelineName::Generate => "generate",
            PipelineName::Density => "density",
            PipelineName::Mean => "mean",
            PipelineName::GapCert => "gap-cert",
            PipelineName::TOperator => "t-operator",
            PipelineName::MeyerCheck => "meyer-check",
            PipelineName::Counterexample => "counterexample",
            PipelineName::LiftCheck => "lift-check",
            PipelineName::Reconstruct => "reconstruct",
        }
    }
}

/// A window or patch: a full set descriptor, or a list of intervals or
/// residue classes in whatever space the scheme dictates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetSpec {
    Intervals { intervals: Vec<(Real, Real)> },
    Residues { residues: Vec<(u64, u32)> },
    /// Closed integer ranges `[a, b]`.
    Integers { integers: Vec<(i64, i64)> },
    Full(SetDescriptor),
}

impl SetSpec {
    pub fn resolve(&self, space: &SpaceDescriptor) -> CliResult<SetDescriptor> {
        let set = match self {
            SetSpec::Full(s) => s.clone(),
            SetSpec::Intervals { intervals } => {
                let atoms = intervals.iter().map(|&(start, end)| Atom::Interval { start, end }).collect();
                SetDescriptor::new(space.clone(), atoms)?
            }
            SetSpec::Residues { residues } => SetDescriptor::residue_classes(space.clone(), residues)?,
            SetSpec::Integers { integers } => {
                let atoms = integers.iter().map(|&(a, b)| Atom::Range { start: a, end: b + 1 }).collect();
                SetDescriptor::new(space.clone(), atoms)?
            }
        };
        if set.space() != space {
            return Err(CliError::Config(format!("set lives in {:?}, expected {:?}", set.space(), space)));
        }
        Ok(set)
    }
}

/// One experiment. Pipeline-specific settings go in `params`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    pub pipeline: PipelineName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<SchemeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<SetSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patch: Option<SetSpec>,
    /// Shorthand for the patch `[-R, R]` (closed on `Z`, half-open on `R`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "empty_object")]
    pub params: serde_json::Value,
}

fn empty_object() -> serde_json::Value {
    serde_json::Value::Object(Default::default())
}

impl ExperimentConfig {
    pub fn new(pipeline: PipelineName) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            pipeline,
            scheme: None,
            window: None,
            patch: None,
            radius: None,
            horizon: None,
            out: None,
            seed: 0,
            params: empty_object(),
        }
    }

    pub fn from_json(text: &str) -> CliResult<Self> {
        if text.trim().is_empty() {
            return Err(CliError::Config("the config is empty".into()));
        }
        let config: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(format!("cannot parse config: {e}")))?;
        if config.schema_version != SCHEMA_VERSION {
            return Err(CliError::Config(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                config.schema_version
            )));
        }
        Ok(config)
    }

    pub fn scheme(&self) -> CliResult<Scheme> {
        let c = self.scheme.clone().unwrap_or(SchemeConfig::Quadratic { alpha: "golden".into() });
        Scheme::try_from(c).map_err(|e| CliError::Config(format!("bad scheme: {e}")))
    }

    pub fn window(&self, scheme: &Scheme) -> CliResult<SetDescriptor> {
        match &self.window {
            Some(w) => w.resolve(&scheme.internal_space()),
            None => Err(CliError::Config(format!("pipeline {} needs a window", self.pipeline.as_str()))),
        }
    }

    pub fn patch(&self, space: &SpaceDescriptor) -> CliResult<SetDescriptor> {
        match (&self.patch, self.radius) {
            (Some(_), Some(_)) => Err(CliError::Config("give either patch or radius, not both".into())),
            (Some(p), None) => p.resolve(space),
            (None, Some(r)) if r > 0 => radius_patch(space, r),
            (None, Some(r)) => Err(CliError::Config(format!("radius must be positive, got {r}"))),
            (None, None) => Err(CliError::Config(format!("pipeline {} needs a patch or radius", self.pipeline.as_str()))),
        }
    }

    pub fn horizon(&self) -> CliResult<u64> {
        self.horizon
            .ok_or_else(|| CliError::Config(format!("pipeline {} needs a horizon", self.pipeline.as_str())))
    }

    pub fn params<T: DeserializeOwned>(&self) -> CliResult<T> {
        serde_json::from_value(self.params.clone())
            .map_err(|e| CliError::Config(format!("bad params for {}: {e}", self.pipeline.as_str())))
    }
}

pub fn radius_patch(space: &SpaceDescriptor, r: i64) -> CliResult<SetDescriptor> {
    match space {
        SpaceDescriptor::EuclideanLine => Ok(SetDescriptor::interval(-r, r)),
        SpaceDescriptor::Integers => Ok(SetDescriptor::int_closed(-r, r)),
        other => Err(CliError::Config(format!("no radius shorthand for patches in {other:?}"))),
    }
}

/// Exact value of a config number: floats are read through their shortest
/// decimal representation, so `0.1` means `1/10`.
pub fn exact(x: Real) -> CliResult<Real> {
    match x {
        Real::Float(f) => parse_rational(&format!("{f}"))
            .map(Real::rational)
            .map_err(|_| CliError::Config(format!("{f} is not a finite decimal"))),
        exact => Ok(exact),
    }
}
