//! Decision analysis for survey skip sequencing.
//!
//! A survey planner choosing how to field an item has three options: ask
//! everyone (`All`), ask only respondents who answer an opening question
//! positively (`Skip`), or drop the item (`None`). The options differ in
//! cost — the fraction of respondents asked — and in informativeness — the
//! width of the identification region the resulting data leave for the
//! population mean or rate of interest.
//!
//! This crate computes those identification regions under worst-case item
//! nonresponse and under bounded response error, evaluates the linear loss
//! `gamma * cost_fraction + width` for each option, selects the minimizer,
//! and partitions the gamma axis into optimal-design intervals in closed
//! form.
//!
//! Everything here is a pure function of its inputs; there is no shared
//! mutable state, and concurrent use is unrestricted.

mod error;
mod interval;
mod loss;
mod misclass;
mod mixture;
mod nonresponse;
mod partition;
mod regime;
mod table2;

pub use error::CoreError;
pub use interval::{region_none, UnitInterval};
pub use loss::{decide, Decision, DecisionScenario, DesignOption, LossBreakdown, TIE_EPS};
pub use misclass::{AssumptionKind, ErrorAssumption, MisclassAllScenario, MisclassSkipScenario};
pub use mixture::MixtureAssumption;
pub use nonresponse::{NonresponseAllScenario, NonresponseSkipScenario};
pub use partition::{gamma_partition, GammaCell, GammaPartition};
pub use regime::{width_regime, WidthRegime};
pub use table2::{
    check_reference_grid, reproduce_table2, CellCheck, ChosenIntervals, ReferenceRow, Table2Row,
    ThresholdGridInputs, REFERENCE_GRID, REFERENCE_ROUNDING_SLIPS, REFERENCE_TOL,
};
