//! Closed-form region widths by (reported rate, lambda) regime.
//!
//! The clamp formula in [`crate::misclass`] produces four qualitative
//! regimes, depending on how the reported rate compares with `lambda` and
//! `1 - lambda`. This module names the regime and gives its width in closed
//! form. It is a consistency surface over the region formula, not an
//! independent computation: the two must agree to machine precision, and the
//! test suite holds them to 1e-12 on a grid spanning every regime and
//! boundary.

use serde::Serialize;
use std::fmt;

use crate::error::{checked_probability, CoreError};
use crate::misclass::{AssumptionKind, ErrorAssumption};

/// Which of the four width regimes `(p_report, lambda)` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthRegime {
    /// `1 - lambda <= p <= lambda` (possible only when `lambda >= 1/2`):
    /// the clamp leaves the whole unit interval.
    Uninformative,
    /// `p <= min(lambda, 1 - lambda)`: only the upper endpoint binds.
    LowReported,
    /// `lambda <= p <= 1 - lambda`: both endpoints interior.
    Interior,
    /// `p >= max(lambda, 1 - lambda)`: only the lower endpoint binds.
    HighReported,
}

impl fmt::Display for WidthRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Uninformative => f.write_str("1-lambda <= p <= lambda"),
            Self::LowReported => f.write_str("p <= min(lambda, 1-lambda)"),
            Self::Interior => f.write_str("lambda <= p <= 1-lambda"),
            Self::HighReported => f.write_str("p >= max(lambda, 1-lambda)"),
        }
    }
}

/// Classify the regime and return its closed-form region width.
///
/// Boundary inputs satisfy more than one regime inequality; classification
/// picks the first match in the order above, and the widths agree on every
/// shared boundary, so the choice is cosmetic.
pub fn width_regime(
    p_report: f64,
    lambda: f64,
    kind: AssumptionKind,
) -> Result<(WidthRegime, f64), CoreError> {
    let p = checked_probability("p_report", p_report)?;
    // reuse lambda validation
    ErrorAssumption::new(kind, lambda)?;
    let lam = lambda;

    let regime = if 1.0 - lam <= p && p <= lam {
        WidthRegime::Uninformative
    } else if p <= lam && p <= 1.0 - lam {
        WidthRegime::LowReported
    } else if lam <= p && p <= 1.0 - lam {
        WidthRegime::Interior
    } else {
        WidthRegime::HighReported
    };

    let width = match (kind, regime) {
        (_, WidthRegime::Uninformative) => 1.0,
        (AssumptionKind::JointBound, WidthRegime::LowReported) => p + lam,
        (AssumptionKind::JointBound, WidthRegime::Interior) => 2.0 * lam,
        (AssumptionKind::JointBound, WidthRegime::HighReported) => 1.0 - p + lam,
        (AssumptionKind::PerValueBound, WidthRegime::LowReported) => p / (1.0 - lam),
        (AssumptionKind::PerValueBound, WidthRegime::Interior) => lam / (1.0 - lam),
        (AssumptionKind::PerValueBound, WidthRegime::HighReported) => (1.0 - p) / (1.0 - lam),
    };
    Ok((regime, width))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_reported_joint_example() {
        let (regime, width) = width_regime(0.073, 0.36, AssumptionKind::JointBound).unwrap();
        assert_eq!(regime, WidthRegime::LowReported);
        assert!((width - 0.433).abs() < 1e-12);
    }

    #[test]
    fn interior_joint_example() {
        let (regime, width) = width_regime(0.5, 0.2, AssumptionKind::JointBound).unwrap();
        assert_eq!(regime, WidthRegime::Interior);
        assert!((width - 0.4).abs() < 1e-12);
    }

    #[test]
    fn high_reported_per_value_example() {
        // (1 - 0.9) / (1 - 0.2) = 0.125
        let (regime, width) = width_regime(0.9, 0.2, AssumptionKind::PerValueBound).unwrap();
        assert_eq!(regime, WidthRegime::HighReported);
        assert!((width - 0.125).abs() < 1e-12);
    }

    #[test]
    fn uninformative_needs_large_lambda() {
        let (regime, width) = width_regime(0.5, 0.7, AssumptionKind::JointBound).unwrap();
        assert_eq!(regime, WidthRegime::Uninformative);
        assert_eq!(width, 1.0);
    }

    #[test]
    fn regime_boundaries_agree_with_the_region_width() {
        // sweep includes p = lambda, p = 1 - lambda and lambda = 1/2 corners
        for kind in [AssumptionKind::JointBound, AssumptionKind::PerValueBound] {
            for &(p, lam) in &[
                (0.3, 0.3),
                (0.7, 0.3),
                (0.5, 0.5),
                (0.25, 0.75),
                (0.75, 0.75),
                (0.0, 0.0),
                (1.0, 0.0),
                (0.0, 0.99),
                (1.0, 0.99),
            ] {
                let (_, width) = width_regime(p, lam, kind).unwrap();
                let region = ErrorAssumption::new(kind, lam).unwrap().region_for(p);
                assert!(
                    (width - region.width()).abs() <= 1e-12,
                    "kind {kind:?} p {p} lam {lam}: {width} vs {}",
                    region.width()
                );
            }
        }
    }
}
