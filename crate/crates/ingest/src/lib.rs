//! Respondent-level microdata ingestion.
//!
//! Parses delimited survey files into [`MicroRecord`]s — totally, with a
//! reject list rather than mid-file aborts — and reduces record sets to the
//! observable scenario quantities the decision engine consumes. All scenario
//! fields are exact ratios of counts.

mod error;
mod gfunction;
mod parse;
mod record;
mod scenario;
mod schema;
mod write;

pub use error::IngestError;
pub use gfunction::GFunction;
pub use parse::{parse_microdata, ParseOutcome, RejectReason, RejectedRow};
pub use record::MicroRecord;
pub use scenario::{
    compute_mc_all_scenario, compute_mc_skip_scenario, compute_nr_all_scenario,
    compute_nr_skip_scenario,
};
pub use schema::{IngestSchema, PositiveBranch};
pub use write::write_microdata;
