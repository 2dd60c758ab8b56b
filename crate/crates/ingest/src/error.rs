use thiserror::Error;

/// Hard errors that abort an ingest operation. Row-level problems never
/// abort a parse; they land in the reject list instead.
#[derive(Debug, Error)]
pub enum IngestError {
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("header is missing required column {column:?}")]
    MissingColumn { column: String },

    #[error("duplicate respondent_id {id:?} at line {line}")]
    DuplicateRespondentId { id: String, line: u64 },

    #[error("no records to compute from")]
    EmptyRecords,

    #[error("no answered follow-ups: the responder mean is undefined")]
    UndefinedMean,

    #[error("respondent {id:?}: follow-up value {value} is not binary-coded (expected 0 or {positive_code})")]
    NonBinaryFollowup { id: String, value: f64, positive_code: f64 },

    #[error("respondent {id:?}: {detail} (full response required under a response-error scenario)")]
    NotFullResponse { id: String, detail: String },

    #[error("invalid schema: {0}")]
    InvalidSchema(String),

    #[error(transparent)]
    Core(#[from] skipseq_core::CoreError),
}
