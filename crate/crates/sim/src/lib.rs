//! Synthetic survey simulation and brute-force verification oracles.
//!
//! Generates truth populations, runs the three design options under
//! nonresponse, response-error, and mixture reporting processes, reduces
//! the outcomes to observable scenario quantities, and checks the decision
//! engine's regions two ways: coverage (the truth always lies inside) and
//! sharpness (brute-force extremization over feasible processes reproduces
//! the endpoints).
//!
//! Runs are deterministic given their seeds; distinct runs share no state
//! and may execute concurrently.

mod calibrate;
mod error;
mod observe;
mod oracle;
mod polytope;
mod population;
mod response;

pub use calibrate::{build_skip_nonresponse_records, SkipNonresponseCounts};
pub use error::SimError;
pub use observe::{
    coverage_check, empirical_quantities, sample_records, Observables, ObservationKind,
    ObservedDataset, TruthSummary, COVERAGE_EPS,
};
pub use oracle::{oracle_mc_all, oracle_mc_skip, oracle_nr_all, oracle_nr_skip, sharpness_oracle};
pub use population::{gen_population, Member, Population, PopulationConfig, YDistribution};
pub use response::{
    apply_design, ErrorFlavor, MisclassModel, MissingnessRule, MixtureModel, NonresponseModel,
    ResponseModel,
};
