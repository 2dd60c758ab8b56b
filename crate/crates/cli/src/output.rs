//! Output rendering: machine-stable JSON or a human table.
//!
//! JSON carries full-precision numbers (serialized in shortest round-trip
//! form) with field names fixed by the output structs; tables round to four
//! decimals for display only.

use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable table.
    Table,
    /// Machine-readable JSON document.
    Json,
}

/// Render either the JSON document or the prepared table lines. The whole
/// string is built before anything is printed, so a failure never leaves
/// partial output behind.
pub fn render<T: Serialize>(
    format: OutputFormat,
    value: &T,
    table: impl FnOnce() -> String,
) -> Result<String, CliError> {
    match format {
        OutputFormat::Json => Ok(serde_json::to_string_pretty(value)?),
        OutputFormat::Table => Ok(table()),
    }
}

/// Four-decimal display rounding.
pub fn disp(v: f64) -> String {
    format!("{v:.4}")
}

pub fn disp_opt(v: Option<f64>) -> String {
    match v {
        Some(v) => disp(v),
        None => "-".into(),
    }
}
