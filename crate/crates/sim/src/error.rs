use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("model {model} cannot be applied under design option {design}")]
    IncompatibleModel { design: skipseq_core::DesignOption, model: &'static str },

    #[error("response-error models need a binary population on {{0, 1}}")]
    NonBinaryPopulation,

    #[error("no observable quantities exist for this dataset: {0}")]
    NoObservables(String),

    #[error("dataset carries no declared error bound to attach to the observables")]
    MissingAssumption,

    #[error("observables are infeasible: {0}")]
    InfeasibleObservables(String),

    #[error("oracle setup is degenerate: {0}")]
    OracleDegenerate(String),

    #[error(transparent)]
    Ingest(#[from] skipseq_ingest::IngestError),

    #[error(transparent)]
    Core(#[from] skipseq_core::CoreError),
}
