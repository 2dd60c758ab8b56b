//! Linear loss and the choice among the three design options.
//!
//! Each option k carries a cost fraction `f_k` (the share of respondents
//! asked the item) and a width `d_k` (the size of its identification
//! region). Loss is the affine combination `L_k = gamma * f_k + d_k`, where
//! `gamma >= 0` weights per-respondent cost against informativeness. Always:
//! `f_All = 1 >= f_Skip >= f_None = 0` and `d_None = 1`, so `L_None == 1`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::CoreError;
use crate::misclass::{MisclassAllScenario, MisclassSkipScenario};
use crate::nonresponse::{NonresponseAllScenario, NonresponseSkipScenario};

/// The three ways to field the item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DesignOption {
    /// Ask every respondent.
    All,
    /// Ask only respondents who answer the opening question positively.
    Skip,
    /// Do not ask at all.
    None,
}

impl DesignOption {
    pub const ALL_OPTIONS: [DesignOption; 3] =
        [DesignOption::All, DesignOption::Skip, DesignOption::None];
}

impl fmt::Display for DesignOption {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::All => f.write_str("all"),
            Self::Skip => f.write_str("skip"),
            Self::None => f.write_str("none"),
        }
    }
}

/// A full decision input: the observables (or conjectures) for option All
/// and for option Skip under one inferential problem. Option None needs no
/// data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase")]
pub enum DecisionScenario {
    Nonresponse {
        all: NonresponseAllScenario,
        skip: NonresponseSkipScenario,
    },
    Misclassification {
        all: MisclassAllScenario,
        skip: MisclassSkipScenario,
    },
}

impl DecisionScenario {
    pub fn nonresponse(all: NonresponseAllScenario, skip: NonresponseSkipScenario) -> Self {
        Self::Nonresponse { all, skip }
    }

    /// The two error bounds may differ in lambda but must come from the same
    /// family: the bound families pair across design options.
    pub fn misclassification(
        all: MisclassAllScenario,
        skip: MisclassSkipScenario,
    ) -> Result<Self, CoreError> {
        if all.assumption().kind() != skip.assumption().kind() {
            return Err(CoreError::AssumptionKindMismatch);
        }
        Ok(Self::Misclassification { all, skip })
    }

    /// Cost fraction and region width for one option.
    pub fn loss(&self, option: DesignOption) -> LossBreakdown {
        let (cost_fraction, width) = match (self, option) {
            (_, DesignOption::None) => (0.0, 1.0),
            (Self::Nonresponse { all, .. }, DesignOption::All) => (1.0, all.region().width()),
            (Self::Nonresponse { skip, .. }, DesignOption::Skip) => {
                (skip.p_asked(), skip.region().width())
            }
            (Self::Misclassification { all, .. }, DesignOption::All) => {
                (1.0, all.region().width())
            }
            (Self::Misclassification { skip, .. }, DesignOption::Skip) => {
                (skip.p_x_report(), skip.region().width())
            }
        };
        LossBreakdown { option, cost_fraction, width }
    }

    /// Breakdowns for All, Skip, None, in that order.
    pub fn losses(&self) -> [LossBreakdown; 3] {
        DesignOption::ALL_OPTIONS.map(|o| self.loss(o))
    }

    /// A bound on joint (opener, follow-up) coincidence is harder to satisfy
    /// than one on a single report, so one ordinarily expects
    /// `lambda_all <= lambda_skip`. The reverse is allowed but flagged.
    pub fn lambda_ordering_warning(&self) -> Option<String> {
        match self {
            Self::Misclassification { all, skip }
                if all.assumption().lambda() > skip.assumption().lambda() =>
            {
                Some(format!(
                    "lambda under All ({}) exceeds lambda under Skip ({}); \
                     a joint error bound is usually the weaker one",
                    all.assumption().lambda(),
                    skip.assumption().lambda()
                ))
            }
            _ => None,
        }
    }
}

/// Cost fraction and informativeness of one option; loss at a given gamma is
/// the affine combination of the two.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LossBreakdown {
    pub option: DesignOption,
    pub cost_fraction: f64,
    pub width: f64,
}

impl LossBreakdown {
    pub fn loss_at(&self, gamma: f64) -> f64 {
        gamma * self.cost_fraction + self.width
    }
}

/// Two losses within this distance are treated as tied.
pub const TIE_EPS: f64 = 1e-12;

/// Outcome of minimizing loss at one gamma.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Decision {
    pub gamma: f64,
    /// Every option whose loss is minimal (up to [`TIE_EPS`]), in the fixed
    /// order All, Skip, None.
    pub minimizers: Vec<DesignOption>,
    /// Ties break toward the cheaper option: None over Skip over All.
    pub chosen: DesignOption,
    pub losses: [LossBreakdown; 3],
}

/// Minimize loss over the three options at cost weight `gamma`.
pub fn decide(gamma: f64, scenario: &DecisionScenario) -> Result<Decision, CoreError> {
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(CoreError::NegativeGamma(gamma));
    }
    let losses = scenario.losses();
    let values = losses.map(|l| l.loss_at(gamma));
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let minimizers: Vec<DesignOption> = losses
        .iter()
        .zip(values.iter())
        .filter(|(_, v)| **v <= min + TIE_EPS)
        .map(|(l, _)| l.option)
        .collect();
    // cheaper option wins a tie: None > Skip > All
    let chosen = *[DesignOption::None, DesignOption::Skip, DesignOption::All]
        .iter()
        .find(|o| minimizers.contains(o))
        .expect("at least one minimizer exists");
    Ok(Decision { gamma, minimizers, chosen, losses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{adl_like_scenario, hrs_like_scenario};
    use crate::misclass::{AssumptionKind, ErrorAssumption};

    #[test]
    fn skip_loss_line_matches_benchmark() {
        // L_Skip = 0.8705 gamma + 0.0920
        let l = hrs_like_scenario().loss(DesignOption::Skip);
        assert!((l.cost_fraction - 0.8705).abs() < 1e-9);
        assert!((l.width - 0.0920).abs() < 1e-12);
        assert!((l.loss_at(1.0) - 0.9625).abs() < 1e-9);
    }

    #[test]
    fn all_loss_line_matches_benchmark() {
        // Under the joint bound: L_All = gamma + 0.2230.
        let l = adl_like_scenario(AssumptionKind::JointBound).loss(DesignOption::All);
        assert_eq!(l.cost_fraction, 1.0);
        assert!((l.width - 0.2230).abs() < 5e-4);
    }

    #[test]
    fn none_loss_is_constant_one() {
        for scenario in [hrs_like_scenario(), adl_like_scenario(AssumptionKind::PerValueBound)] {
            let l = scenario.loss(DesignOption::None);
            assert_eq!(l.cost_fraction, 0.0);
            assert_eq!(l.width, 1.0);
            for gamma in [0.0, 0.5, 100.0] {
                assert_eq!(l.loss_at(gamma), 1.0);
            }
        }
    }

    #[test]
    fn decide_crosses_from_all_to_skip_to_none() {
        let s = hrs_like_scenario();
        assert_eq!(decide(0.05, &s).unwrap().chosen, DesignOption::All);
        assert_eq!(decide(0.5, &s).unwrap().chosen, DesignOption::Skip);
        assert_eq!(decide(2.0, &s).unwrap().chosen, DesignOption::None);
    }

    #[test]
    fn decide_adl_joint_at_unit_gamma_is_skip() {
        let s = adl_like_scenario(AssumptionKind::JointBound);
        assert_eq!(decide(1.0, &s).unwrap().chosen, DesignOption::Skip);
    }

    #[test]
    fn decide_rejects_negative_gamma() {
        let err = decide(-0.1, &hrs_like_scenario()).unwrap_err();
        assert!(matches!(err, CoreError::NegativeGamma(_)));
    }

    #[test]
    fn huge_gamma_always_chooses_none() {
        for s in [hrs_like_scenario(), adl_like_scenario(AssumptionKind::JointBound)] {
            assert_eq!(decide(1e6, &s).unwrap().chosen, DesignOption::None);
        }
    }

    #[test]
    fn mismatched_assumption_families_are_rejected() {
        let all = MisclassAllScenario::new(
            0.073,
            ErrorAssumption::new(AssumptionKind::JointBound, 0.15).unwrap(),
        )
        .unwrap();
        let skip = MisclassSkipScenario::new(
            0.073,
            0.092,
            ErrorAssumption::new(AssumptionKind::PerValueBound, 0.25).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            DecisionScenario::misclassification(all, skip),
            Err(CoreError::AssumptionKindMismatch)
        ));
    }

    #[test]
    fn lambda_ordering_warning_fires_only_when_reversed() {
        let ok = adl_like_scenario(AssumptionKind::JointBound);
        assert!(ok.lambda_ordering_warning().is_none());

        let reversed = DecisionScenario::misclassification(
            MisclassAllScenario::new(
                0.073,
                ErrorAssumption::new(AssumptionKind::JointBound, 0.30).unwrap(),
            )
            .unwrap(),
            MisclassSkipScenario::new(
                0.073,
                0.092,
                ErrorAssumption::new(AssumptionKind::JointBound, 0.25).unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        assert!(reversed.lambda_ordering_warning().is_some());
    }

    #[test]
    fn tie_breaks_toward_cheaper_option() {
        // f_Skip = 0 and d_Skip = 1 makes Skip's loss line identical to None's.
        let s = DecisionScenario::nonresponse(
            NonresponseAllScenario::new(0.2, 0.5).unwrap(),
            NonresponseSkipScenario::new(0.0, 0.0, 0.0, 1.0).unwrap(),
        );
        let d = decide(3.0, &s).unwrap();
        assert_eq!(d.minimizers, vec![DesignOption::Skip, DesignOption::None]);
        assert_eq!(d.chosen, DesignOption::None);
    }
}
