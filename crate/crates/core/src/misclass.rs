//! Identification regions for a binary outcome under response error.
//!
//! Everyone responds, but reports may be wrong. A reported rate alone says
//! nothing about the true rate; it becomes informative once the prevalence
//! of errors is bounded. Two bound families are supported:
//!
//! * [`AssumptionKind::JointBound`] — the probability that the report and the
//!   truth coincide is at least `1 - lambda`. Under skip sequencing the bound
//!   applies jointly to the (opener, follow-up) pair.
//! * [`AssumptionKind::PerValueBound`] — for every true value, the
//!   probability of a correct report is at least `1 - lambda`. This is the
//!   stronger assumption and yields a region nested inside the joint one.
//!
//! Both regions come out of one clamp-to-unit-interval formula; the
//! regime-by-regime width table is a consequence, not a separate code path.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{checked_probability, CoreError};
use crate::interval::UnitInterval;

/// Which form the error bound takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssumptionKind {
    /// Lower bound on the probability that report and truth coincide.
    JointBound,
    /// Lower bound on the probability of a correct report for each true value.
    PerValueBound,
}

impl fmt::Display for AssumptionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::JointBound => f.write_str("joint"),
            Self::PerValueBound => f.write_str("per-value"),
        }
    }
}

/// An error-prevalence bound: the family plus the bound `lambda` in [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorAssumption {
    kind: AssumptionKind,
    lambda: f64,
}

impl ErrorAssumption {
    pub fn new(kind: AssumptionKind, lambda: f64) -> Result<Self, CoreError> {
        if !lambda.is_finite() || !(0.0..1.0).contains(&lambda) {
            return Err(CoreError::LambdaOutOfRange(lambda));
        }
        Ok(Self { kind, lambda })
    }

    pub fn kind(&self) -> AssumptionKind {
        self.kind
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Identification region for the true rate given a reported rate.
    ///
    /// JointBound:    [0,1] ∩ [p - λ, p + λ]
    /// PerValueBound: [0,1] ∩ [(p - λ)/(1 - λ), p/(1 - λ)]
    ///
    /// The intersection is never empty for p in [0, 1].
    pub fn region_for(&self, p_report: f64) -> UnitInterval {
        let p = p_report;
        let lam = self.lambda;
        let (raw_lo, raw_hi) = match self.kind {
            AssumptionKind::JointBound => (p - lam, p + lam),
            AssumptionKind::PerValueBound => ((p - lam) / (1.0 - lam), p / (1.0 - lam)),
        };
        UnitInterval::new(raw_lo.max(0.0), raw_hi.min(1.0))
            .expect("clamped endpoints form a valid region")
    }
}

/// Observables when the item is asked of everyone: the reported rate, plus
/// the maintained error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MisclassAllScenario {
    p_report: f64,
    assumption: ErrorAssumption,
}

impl MisclassAllScenario {
    pub fn new(p_report: f64, assumption: ErrorAssumption) -> Result<Self, CoreError> {
        Ok(Self {
            p_report: checked_probability("p_report", p_report)?,
            assumption,
        })
    }

    pub fn p_report(&self) -> f64 {
        self.p_report
    }

    pub fn assumption(&self) -> ErrorAssumption {
        self.assumption
    }

    pub fn region(&self) -> UnitInterval {
        self.assumption.region_for(self.p_report)
    }
}

/// Observables under skip sequencing: the reported follow-up rate and the
/// reported positive-opener rate, plus the maintained error bound.
///
/// `p_x_report` does not move the region (it enters only the cost of the
/// design), but skip logic requires `p_report <= p_x_report`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MisclassSkipScenario {
    p_report: f64,
    p_x_report: f64,
    assumption: ErrorAssumption,
}

impl MisclassSkipScenario {
    pub fn new(
        p_report: f64,
        p_x_report: f64,
        assumption: ErrorAssumption,
    ) -> Result<Self, CoreError> {
        let p = checked_probability("p_report", p_report)?;
        let px = checked_probability("p_x_report", p_x_report)?;
        if p > px {
            return Err(CoreError::SkipLogicViolation { p_report: p, p_x_report: px });
        }
        Ok(Self { p_report: p, p_x_report: px, assumption })
    }

    pub fn p_report(&self) -> f64 {
        self.p_report
    }

    pub fn p_x_report(&self) -> f64 {
        self.p_x_report
    }

    pub fn assumption(&self) -> ErrorAssumption {
        self.assumption
    }

    pub fn region(&self) -> UnitInterval {
        self.assumption.region_for(self.p_report)
    }
}
