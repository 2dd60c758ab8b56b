//! Observed datasets, their observable quantities, and coverage checks.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use skipseq_core::{
    DesignOption, ErrorAssumption, MisclassAllScenario, MisclassSkipScenario,
    NonresponseAllScenario, NonresponseSkipScenario, UnitInterval,
};
use skipseq_ingest::{
    compute_mc_all_scenario, compute_mc_skip_scenario, compute_nr_all_scenario,
    compute_nr_skip_scenario, IngestSchema, MicroRecord,
};

use crate::error::SimError;

/// Which inferential problem the dataset embodies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservationKind {
    Nonresponse,
    ResponseError,
}

/// Population-level truth, retained for oracle and coverage use only — no
/// observable computation may touch it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TruthSummary {
    pub mean_g: f64,
    /// Defined for binary populations.
    pub p_positive: Option<f64>,
}

/// A simulated survey outcome: respondent records plus bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservedDataset {
    pub records: Vec<MicroRecord>,
    pub design: DesignOption,
    pub kind: ObservationKind,
    /// The bound the generating process respected, if any.
    pub declared_assumption: Option<ErrorAssumption>,
    pub truth: TruthSummary,
    /// Layout the records follow if written out as microdata.
    pub schema: IngestSchema,
}

/// Observable scenario quantities computed from a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Observables {
    NrAll(NonresponseAllScenario),
    NrSkip(NonresponseSkipScenario),
    McAll(MisclassAllScenario),
    McSkip(MisclassSkipScenario),
}

/// Reduce a dataset to its observable quantities. Population mode: uses
/// every record, so the quantities are exact rates of the realized process.
pub fn empirical_quantities(obs: &ObservedDataset) -> Result<Observables, SimError> {
    match (obs.design, obs.kind) {
        (DesignOption::None, _) => Err(SimError::NoObservables(
            "nothing is asked under design option None".into(),
        )),
        (DesignOption::All, ObservationKind::Nonresponse) => Ok(Observables::NrAll(
            compute_nr_all_scenario(&obs.records, &obs.schema)?,
        )),
        (DesignOption::Skip, ObservationKind::Nonresponse) => Ok(Observables::NrSkip(
            compute_nr_skip_scenario(&obs.records, &obs.schema)?,
        )),
        (DesignOption::All, ObservationKind::ResponseError) => {
            let assumption = obs.declared_assumption.ok_or(SimError::MissingAssumption)?;
            Ok(Observables::McAll(compute_mc_all_scenario(&obs.records, 1.0, assumption)?))
        }
        (DesignOption::Skip, ObservationKind::ResponseError) => {
            let assumption = obs.declared_assumption.ok_or(SimError::MissingAssumption)?;
            Ok(Observables::McSkip(compute_mc_skip_scenario(
                &obs.records,
                &obs.schema,
                1.0,
                assumption,
            )?))
        }
    }
}

impl Observables {
    /// The identification region these observables imply.
    pub fn region(&self) -> UnitInterval {
        match self {
            Observables::NrAll(s) => s.region(),
            Observables::NrSkip(s) => s.region(),
            Observables::McAll(s) => s.region(),
            Observables::McSkip(s) => s.region(),
        }
    }
}

/// Population-level slack: region endpoints are exact up to float rounding.
pub const COVERAGE_EPS: f64 = 1e-9;

/// Whether the region covers the true parameter, with population-level
/// tolerance. Finite-sample checks should widen the slack with binomial
/// bands instead.
pub fn coverage_check(truth: f64, region: &UnitInterval) -> bool {
    region.contains(truth, COVERAGE_EPS)
}

/// Sample mode: draw `m` respondents without replacement, keeping the
/// population truth for reference.
pub fn sample_records(obs: &ObservedDataset, m: usize, seed: u64) -> Result<ObservedDataset, SimError> {
    if m == 0 || m > obs.records.len() {
        return Err(SimError::InvalidConfig(format!(
            "sample size {m} must lie in [1, {}]",
            obs.records.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut indices: Vec<usize> = sample(&mut rng, obs.records.len(), m).into_iter().collect();
    indices.sort_unstable();
    Ok(ObservedDataset {
        records: indices.iter().map(|&i| obs.records[i].clone()).collect(),
        ..obs.clone()
    })
}
