//! Shared parameter plumbing: flag/config merging and scenario assembly.
//!
//! Every scenario-taking subcommand accepts its parameters as flags, from
//! the `--config` JSON document, or a mixture; flags win on conflict. Keys
//! in the config document use the flag spelling without the leading dashes.

use std::fs;
use std::path::Path;

use clap::{Args, ValueEnum};
use serde_json::Value;
use skipseq_core::{
    AssumptionKind, DecisionScenario, DesignOption, ErrorAssumption, MisclassAllScenario,
    MisclassSkipScenario, NonresponseAllScenario, NonresponseSkipScenario,
};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AssumptionArg {
    /// Lower bound on joint coincidence of reports and truth.
    Joint,
    /// Lower bound on correct reporting for each true value.
    PerValue,
}

impl From<AssumptionArg> for AssumptionKind {
    fn from(a: AssumptionArg) -> Self {
        match a {
            AssumptionArg::Joint => AssumptionKind::JointBound,
            AssumptionArg::PerValue => AssumptionKind::PerValueBound,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Nonresponse,
    Misclass,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DesignArg {
    All,
    Skip,
    None,
}

impl From<DesignArg> for DesignOption {
    fn from(d: DesignArg) -> Self {
        match d {
            DesignArg::All => DesignOption::All,
            DesignArg::Skip => DesignOption::Skip,
            DesignArg::None => DesignOption::None,
        }
    }
}

/// The loaded `--config` document (or an empty one).
#[derive(Debug, Default)]
pub struct ConfigMap(serde_json::Map<String, Value>);

impl ConfigMap {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::validation(format!("cannot read config {path:?}: {e}")))?;
        let value: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::validation(format!("config {path:?} is not valid JSON: {e}")))?;
        match value {
            Value::Object(map) => Ok(Self(map)),
            _ => Err(CliError::validation(format!("config {path:?} must hold a JSON object"))),
        }
    }

    pub fn f64(&self, key: &str) -> Option<f64> {
        self.0.get(key).and_then(Value::as_f64)
    }

    pub fn str(&self, key: &str) -> Option<&str> {
        self.0.get(key).and_then(Value::as_str)
    }

    /// The raw document, for subcommands with structured (non-flat) config.
    pub fn raw(&self) -> &serde_json::Map<String, Value> {
        &self.0
    }
}

/// Flag value, else config value, else a field-named validation error.
pub fn need(name: &str, flag: Option<f64>, cfg: &ConfigMap) -> Result<f64, CliError> {
    flag.or_else(|| cfg.f64(name))
        .ok_or_else(|| CliError::validation(format!("missing required parameter --{name}")))
}

pub fn fallback(name: &str, flag: Option<f64>, cfg: &ConfigMap) -> Option<f64> {
    flag.or_else(|| cfg.f64(name))
}

pub fn need_assumption(
    flag: Option<AssumptionArg>,
    cfg: &ConfigMap,
) -> Result<AssumptionKind, CliError> {
    if let Some(a) = flag {
        return Ok(a.into());
    }
    match cfg.str("assumption") {
        Some("joint") => Ok(AssumptionKind::JointBound),
        Some("per-value") => Ok(AssumptionKind::PerValueBound),
        Some(other) => Err(CliError::validation(format!(
            "assumption {other:?} must be \"joint\" or \"per-value\""
        ))),
        None => Err(CliError::validation("missing required parameter --assumption")),
    }
}

/// Full decision-scenario parameters for `loss`, `decide` and `sweep`.
#[derive(Debug, Args)]
pub struct ScenarioArgs {
    /// Inferential problem the scenario describes.
    #[arg(long, value_enum)]
    pub variant: Option<VariantArg>,

    // nonresponse: option All observables/conjectures
    /// Nonresponse probability when everyone is asked.
    #[arg(long)]
    pub p_nonresp: Option<f64>,
    /// Responder mean when everyone is asked.
    #[arg(long)]
    pub mean_resp_all: Option<f64>,

    // nonresponse: option Skip observables
    /// Follow-up response rate under skip sequencing.
    #[arg(long)]
    pub p_y_resp: Option<f64>,
    /// Responder mean under skip sequencing.
    #[arg(long)]
    pub mean_resp: Option<f64>,
    /// Mass asked the follow-up that answered the opening but not it.
    #[arg(long)]
    pub p_x_open_y_miss: Option<f64>,
    /// Opening nonresponse mass.
    #[arg(long)]
    pub p_x_miss: Option<f64>,
    /// Positive-opener mass (defaults to p_y_resp + p_x_open_y_miss).
    #[arg(long)]
    pub p_asked: Option<f64>,

    // misclassification
    /// Conjectured reported rate when everyone is asked.
    #[arg(long)]
    pub p_report_all: Option<f64>,
    /// Error bound when everyone is asked.
    #[arg(long)]
    pub lambda_all: Option<f64>,
    /// Reported follow-up rate under skip sequencing.
    #[arg(long)]
    pub p_report: Option<f64>,
    /// Reported positive-opener rate under skip sequencing.
    #[arg(long)]
    pub p_x_report: Option<f64>,
    /// Error bound under skip sequencing.
    #[arg(long)]
    pub lambda_skip: Option<f64>,
    /// Error-bound family shared by both options.
    #[arg(long, value_enum)]
    pub assumption: Option<AssumptionArg>,
}

impl ScenarioArgs {
    pub fn build(&self, cfg: &ConfigMap) -> Result<DecisionScenario, CliError> {
        let variant = match self.variant {
            Some(v) => v,
            None => match cfg.str("variant") {
                Some("nonresponse") => VariantArg::Nonresponse,
                Some("misclass") => VariantArg::Misclass,
                Some(other) => {
                    return Err(CliError::validation(format!(
                        "variant {other:?} must be \"nonresponse\" or \"misclass\""
                    )))
                }
                None => {
                    return Err(CliError::validation("missing required parameter --variant"))
                }
            },
        };
        match variant {
            VariantArg::Nonresponse => {
                let all = NonresponseAllScenario::new(
                    need("p-nonresp", self.p_nonresp, cfg)?,
                    need("mean-resp-all", self.mean_resp_all, cfg)?,
                )?;
                let q = need("p-y-resp", self.p_y_resp, cfg)?;
                let m = need("mean-resp", self.mean_resp, cfg)?;
                let a = need("p-x-open-y-miss", self.p_x_open_y_miss, cfg)?;
                let b = need("p-x-miss", self.p_x_miss, cfg)?;
                let skip = match fallback("p-asked", self.p_asked, cfg) {
                    Some(p_asked) => {
                        NonresponseSkipScenario::with_p_asked(q, m, a, b, p_asked)?
                    }
                    None => NonresponseSkipScenario::new(q, m, a, b)?,
                };
                Ok(DecisionScenario::nonresponse(all, skip))
            }
            VariantArg::Misclass => {
                let kind = need_assumption(self.assumption, cfg)?;
                let all = MisclassAllScenario::new(
                    need("p-report-all", self.p_report_all, cfg)?,
                    ErrorAssumption::new(kind, need("lambda-all", self.lambda_all, cfg)?)?,
                )?;
                let skip = MisclassSkipScenario::new(
                    need("p-report", self.p_report, cfg)?,
                    need("p-x-report", self.p_x_report, cfg)?,
                    ErrorAssumption::new(kind, need("lambda-skip", self.lambda_skip, cfg)?)?,
                )?;
                Ok(DecisionScenario::misclassification(all, skip)?)
            }
        }
    }
}
