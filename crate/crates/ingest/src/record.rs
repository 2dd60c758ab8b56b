//! One respondent's observed row.

use serde::{Deserialize, Serialize};

/// Raw observables for one respondent. Absent values mean the question was
/// asked but not answered; whether a question was asked at all is recorded
/// separately so that skip patterns stay distinguishable from nonresponse.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MicroRecord {
    pub respondent_id: String,
    pub opening_asked: bool,
    pub opening_value: Option<f64>,
    pub followup_asked: bool,
    pub followup_value: Option<f64>,
    /// Passthrough metadata (e.g. a proxy-respondent flag); never used by
    /// any computation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub proxy_flag: Option<String>,
}

impl MicroRecord {
    /// A record for a respondent who was never asked anything.
    pub fn unasked(id: impl Into<String>) -> Self {
        Self {
            respondent_id: id.into(),
            opening_asked: false,
            opening_value: None,
            followup_asked: false,
            followup_value: None,
            proxy_flag: None,
        }
    }
}
