//! Translation from the mixture model of data errors to the
//! misclassification bounds.
//!
//! The mixture model views a report as `report = w * truth + (1 - w) * e`
//! for a latent indicator `w` and a latent error value `e`. Bounding
//! `P(w = 0) <= lambda` alone ("corrupted sampling") is equivalent to the
//! joint coincidence bound; adding independence of `w` from the truth
//! ("contaminated sampling") is equivalent to the per-value bound. Regions
//! computed through this translation equal regions computed directly.

use serde::{Deserialize, Serialize};

use crate::error::CoreError;
use crate::misclass::{AssumptionKind, ErrorAssumption};

/// An upper bound on the latent error-draw probability, with or without the
/// independence restriction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureAssumption {
    lambda: f64,
    independent_errors: bool,
}

impl MixtureAssumption {
    pub fn new(lambda: f64, independent_errors: bool) -> Result<Self, CoreError> {
        if !lambda.is_finite() || !(0.0..1.0).contains(&lambda) {
            return Err(CoreError::LambdaOutOfRange(lambda));
        }
        Ok(Self { lambda, independent_errors })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn independent_errors(&self) -> bool {
        self.independent_errors
    }

    /// The equivalent misclassification bound: corrupted sampling maps to
    /// the joint bound, contaminated sampling to the per-value bound, with
    /// the same lambda.
    pub fn to_misclass(&self) -> ErrorAssumption {
        let kind = if self.independent_errors {
            AssumptionKind::PerValueBound
        } else {
            AssumptionKind::JointBound
        };
        ErrorAssumption::new(kind, self.lambda).expect("lambda already validated")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_maps_to_joint() {
        let a = MixtureAssumption::new(0.25, false).unwrap().to_misclass();
        assert_eq!(a.kind(), AssumptionKind::JointBound);
        assert_eq!(a.lambda(), 0.25);
    }

    #[test]
    fn contaminated_maps_to_per_value() {
        let a = MixtureAssumption::new(0.0, true).unwrap().to_misclass();
        assert_eq!(a.kind(), AssumptionKind::PerValueBound);
        assert_eq!(a.lambda(), 0.0);
    }

    #[test]
    fn translated_regions_match_direct_ones() {
        for lam in [0.0, 0.1, 0.36] {
            for indep in [false, true] {
                let via = MixtureAssumption::new(lam, indep).unwrap().to_misclass();
                let kind = if indep {
                    AssumptionKind::PerValueBound
                } else {
                    AssumptionKind::JointBound
                };
                let direct = ErrorAssumption::new(kind, lam).unwrap();
                for p in [0.0, 0.073, 0.5, 1.0] {
                    assert_eq!(via.region_for(p), direct.region_for(p));
                }
            }
        }
    }

    #[test]
    fn rejects_lambda_at_one() {
        assert!(MixtureAssumption::new(1.0, true).is_err());
    }
}
