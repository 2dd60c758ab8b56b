use thiserror::Error;

/// Validation and domain errors raised by scenario constructors and the
/// decision operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// A field that must be a probability lies outside [0, 1] by more than
    /// the permitted drift.
    #[error("{field} = {value} is not a probability in [0, 1]")]
    InvalidProbability { field: &'static str, value: f64 },

    /// An error bound must satisfy 0 <= lambda < 1.
    #[error("error bound lambda = {0} must lie in [0, 1)")]
    LambdaOutOfRange(f64),

    /// The observable quantities of a skip scenario must satisfy
    /// p_asked = p_y_resp + p_x_resp_y_nonresp.
    #[error("accounting identity violated: p_asked = {p_asked} but p_y_resp + p_x_resp_y_nonresp = {sum}")]
    AccountingIdentity { p_asked: f64, sum: f64 },

    /// p_asked + p_x_nonresp cannot exceed total probability mass.
    #[error("p_asked + p_x_nonresp = {total} exceeds 1")]
    MassExceedsUnit { total: f64 },

    /// Skip logic forces every positive follow-up report through a positive
    /// opening report, so P(y-report = 1) <= P(opener-report = 1).
    #[error("skip-logic violation: p_report = {p_report} exceeds p_x_report = {p_x_report}")]
    SkipLogicViolation { p_report: f64, p_x_report: f64 },

    /// The two error assumptions of a misclassification decision scenario
    /// must come from the same family.
    #[error("assumption families differ between the All and Skip scenarios")]
    AssumptionKindMismatch,

    /// Interval endpoints out of order or outside the unit interval.
    #[error("[{lo}, {hi}] is not a subinterval of [0, 1]")]
    InvalidInterval { lo: f64, hi: f64 },

    /// The per-respondent cost weight gamma must be nonnegative.
    #[error("gamma = {0} must be nonnegative")]
    NegativeGamma(f64),

    /// Sweep upper limits must be positive.
    #[error("gamma_max = {0} must be positive")]
    NonPositiveGammaMax(f64),
}

/// Inputs computed upstream as ratios of counts may miss [0, 1] by a few
/// ulps; anything within this drift is clamped, anything beyond is an error.
pub(crate) const PROB_DRIFT: f64 = 1e-12;

/// Validate (and if necessary clamp) a probability-valued field.
pub(crate) fn checked_probability(field: &'static str, value: f64) -> Result<f64, CoreError> {
    if !value.is_finite() {
        return Err(CoreError::InvalidProbability { field, value });
    }
    if value < -PROB_DRIFT || value > 1.0 + PROB_DRIFT {
        return Err(CoreError::InvalidProbability { field, value });
    }
    Ok(value.clamp(0.0, 1.0))
}
