//! File layout and interpretation rules for respondent-level microdata.

use serde::{Deserialize, Serialize};
use skipseq_core::DesignOption;

use crate::error::IngestError;
use crate::gfunction::GFunction;

/// The opening-question branch rule: a present answer routes the respondent
/// to the follow-up when it exceeds the threshold. The default threshold of
/// zero covers both a 0–100 scale item ("greater than zero") and a yes/no
/// item coded 1/0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositiveBranch {
    pub threshold: f64,
}

impl PositiveBranch {
    pub fn is_positive(&self, value: f64) -> bool {
        value > self.threshold
    }
}

impl Default for PositiveBranch {
    fn default() -> Self {
        Self { threshold: 0.0 }
    }
}

fn default_id_column() -> String {
    "respondent_id".into()
}
fn default_opening_asked_column() -> String {
    "opening_asked".into()
}
fn default_opening_value_column() -> String {
    "opening_value".into()
}
fn default_followup_asked_column() -> String {
    "followup_asked".into()
}
fn default_followup_value_column() -> String {
    "followup_value".into()
}
fn default_delimiter() -> u8 {
    b','
}
fn default_support_max() -> f64 {
    1.0
}
fn default_design() -> DesignOption {
    DesignOption::Skip
}

/// Column names, missing-value sentinel, branch rule, outcome support and
/// normalization, and the design the file was collected under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct IngestSchema {
    pub id_column: String,
    pub opening_asked_column: String,
    pub opening_value_column: String,
    pub followup_asked_column: String,
    pub followup_value_column: String,
    /// Optional proxy-respondent flag column; parsed and carried through as
    /// metadata, never used by any computation.
    pub proxy_column: Option<String>,
    /// Field content marking item nonresponse (empty field by default).
    pub missing_sentinel: String,
    pub delimiter: u8,
    pub positive_branch: PositiveBranch,
    pub support_max: f64,
    pub g: GFunction,
    /// Design option the file's records were collected under; drives the
    /// structural invariants enforced at parse time.
    pub design: DesignOption,
}

impl Default for IngestSchema {
    fn default() -> Self {
        Self {
            id_column: default_id_column(),
            opening_asked_column: default_opening_asked_column(),
            opening_value_column: default_opening_value_column(),
            followup_asked_column: default_followup_asked_column(),
            followup_value_column: default_followup_value_column(),
            proxy_column: None,
            missing_sentinel: String::new(),
            delimiter: default_delimiter(),
            positive_branch: PositiveBranch::default(),
            support_max: default_support_max(),
            g: GFunction::default(),
            design: default_design(),
        }
    }
}

impl IngestSchema {
    /// A skip-design schema for a 0–100 scale outcome with g(y) = y/100.
    pub fn percent_scale() -> Self {
        Self { support_max: 100.0, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), IngestError> {
        self.g.validate(self.support_max)?;
        if self.missing_sentinel.parse::<f64>().is_ok() {
            return Err(IngestError::InvalidSchema(format!(
                "missing sentinel {:?} is indistinguishable from a legal numeric value",
                self.missing_sentinel
            )));
        }
        Ok(())
    }

    /// Apply the configured normalization to a raw follow-up value.
    pub fn normalize(&self, y: f64) -> f64 {
        self.g.apply(y, self.support_max)
    }
}
