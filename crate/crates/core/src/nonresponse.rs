//! Worst-case identification regions under item nonresponse.
//!
//! Respondents who answer are assumed to answer accurately; nothing is
//! assumed about those who do not. The observable response rates and the
//! conditional mean among responders then bound the population mean of the
//! normalized outcome from both sides, and the width of the bound equals the
//! probability mass whose outcome is never seen.

use serde::{Deserialize, Serialize};

use crate::error::{checked_probability, CoreError};
use crate::interval::UnitInterval;

/// Observables when the item is asked of every respondent: the nonresponse
/// rate and the mean of the normalized outcome among responders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonresponseAllScenario {
    p_nonresp: f64,
    mean_resp: f64,
}

impl NonresponseAllScenario {
    pub fn new(p_nonresp: f64, mean_resp: f64) -> Result<Self, CoreError> {
        Ok(Self {
            p_nonresp: checked_probability("p_nonresp", p_nonresp)?,
            mean_resp: checked_probability("mean_resp", mean_resp)?,
        })
    }

    pub fn p_nonresp(&self) -> f64 {
        self.p_nonresp
    }

    pub fn mean_resp(&self) -> f64 {
        self.mean_resp
    }

    /// Identification region for the population mean: responders contribute
    /// their observed mean, nonresponders anything in [0, 1].
    pub fn region(&self) -> UnitInterval {
        let lo = self.mean_resp * (1.0 - self.p_nonresp);
        UnitInterval::new(lo, lo + self.p_nonresp)
            .expect("validated scenario yields a valid region")
    }
}

/// Observables under skip sequencing: follow-up response rate and responder
/// mean, plus the two masses whose outcomes stay hidden (openers who skip the
/// follow-up, and opening nonrespondents).
///
/// `p_asked` is the fraction routed to the follow-up question, which is also
/// the cost fraction of the Skip design. It must satisfy the accounting
/// identity `p_asked = p_y_resp + p_x_resp_y_nonresp`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NonresponseSkipScenario {
    p_y_resp: f64,
    mean_resp: f64,
    p_x_resp_y_nonresp: f64,
    p_x_nonresp: f64,
    p_asked: f64,
}

/// Tolerance on the accounting identity; count-derived inputs satisfy it to
/// a few ulps, hand-entered ones to the printed precision.
const IDENTITY_TOL: f64 = 1e-9;

impl NonresponseSkipScenario {
    /// Build from the four primitive observables; `p_asked` is derived.
    pub fn new(
        p_y_resp: f64,
        mean_resp: f64,
        p_x_resp_y_nonresp: f64,
        p_x_nonresp: f64,
    ) -> Result<Self, CoreError> {
        let q = checked_probability("p_y_resp", p_y_resp)?;
        let a = checked_probability("p_x_resp_y_nonresp", p_x_resp_y_nonresp)?;
        Self::with_p_asked(q, mean_resp, a, p_x_nonresp, q + a)
    }

    /// Build with an explicitly supplied `p_asked`, checked against the
    /// accounting identity.
    pub fn with_p_asked(
        p_y_resp: f64,
        mean_resp: f64,
        p_x_resp_y_nonresp: f64,
        p_x_nonresp: f64,
        p_asked: f64,
    ) -> Result<Self, CoreError> {
        let q = checked_probability("p_y_resp", p_y_resp)?;
        let m = checked_probability("mean_resp", mean_resp)?;
        let a = checked_probability("p_x_resp_y_nonresp", p_x_resp_y_nonresp)?;
        let b = checked_probability("p_x_nonresp", p_x_nonresp)?;
        let asked = checked_probability("p_asked", p_asked)?;
        if (asked - (q + a)).abs() > IDENTITY_TOL {
            return Err(CoreError::AccountingIdentity { p_asked: asked, sum: q + a });
        }
        if asked + b > 1.0 + IDENTITY_TOL {
            return Err(CoreError::MassExceedsUnit { total: asked + b });
        }
        Ok(Self {
            p_y_resp: q,
            mean_resp: m,
            p_x_resp_y_nonresp: a,
            p_x_nonresp: b,
            p_asked: asked,
        })
    }

    pub fn p_y_resp(&self) -> f64 {
        self.p_y_resp
    }

    pub fn mean_resp(&self) -> f64 {
        self.mean_resp
    }

    pub fn p_x_resp_y_nonresp(&self) -> f64 {
        self.p_x_resp_y_nonresp
    }

    pub fn p_x_nonresp(&self) -> f64 {
        self.p_x_nonresp
    }

    pub fn p_asked(&self) -> f64 {
        self.p_asked
    }

    /// Identification region for the population mean under skip sequencing.
    ///
    /// The lower endpoint counts only observed follow-up answers (everyone
    /// hidden at 0); the upper endpoint adds the full hidden mass at 1. The
    /// hidden mass is the follow-up nonrespondents plus all opening
    /// nonrespondents, since an opening nonrespondent may or may not have
    /// been on the positive branch.
    pub fn region(&self) -> UnitInterval {
        let lo = self.mean_resp * self.p_y_resp;
        let hidden = self.p_x_resp_y_nonresp + self.p_x_nonresp;
        UnitInterval::new(lo, lo + hidden).expect("validated scenario yields a valid region")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 5e-4;

    #[test]
    fn all_region_social_security_example() {
        // Benchmark values: nonresponse rate 8%, responder mean 0.4039.
        let s = NonresponseAllScenario::new(0.08, 0.4039).unwrap();
        let r = s.region();
        assert!((r.lo() - 0.3716).abs() < TOL, "lo = {}", r.lo());
        assert!((r.hi() - 0.4516).abs() < TOL, "hi = {}", r.hi());
        assert_eq!(r.lo(), 0.4039 * 0.92);
        assert!((r.width() - 0.08).abs() < 1e-12);
    }

    #[test]
    fn all_region_full_response_point_identifies() {
        let s = NonresponseAllScenario::new(0.0, 0.77).unwrap();
        let r = s.region();
        assert_eq!((r.lo(), r.hi()), (0.77, 0.77));
    }

    #[test]
    fn all_region_total_nonresponse_is_uninformative() {
        let s = NonresponseAllScenario::new(1.0, 0.123).unwrap();
        let r = s.region();
        assert_eq!((r.lo(), r.hi()), (0.0, 1.0));
    }

    #[test]
    fn all_rejects_invalid_probability() {
        let err = NonresponseAllScenario::new(1.2, 0.5).unwrap_err();
        assert!(matches!(err, CoreError::InvalidProbability { field: "p_nonresp", .. }));
    }

    #[test]
    fn skip_region_social_security_example() {
        let s = NonresponseSkipScenario::new(0.8508, 0.4039, 0.0197, 0.0723).unwrap();
        let r = s.region();
        // Frozen from exact arithmetic: 0.4039 * 0.8508 = 0.34363812.
        assert!((r.lo() - 0.3436).abs() < TOL, "lo = {}", r.lo());
        assert!((r.hi() - 0.4356).abs() < TOL, "hi = {}", r.hi());
        assert!((r.lo() - 0.34363812).abs() < 1e-12);
        assert!((r.hi() - 0.43563812).abs() < 1e-12);
        assert!((s.p_asked() - 0.8705).abs() < 1e-9);
    }

    #[test]
    fn skip_region_no_nonresponse_point_identifies() {
        let s = NonresponseSkipScenario::new(1.0, 0.42, 0.0, 0.0).unwrap();
        let r = s.region();
        assert_eq!((r.lo(), r.hi()), (0.42, 0.42));
    }

    #[test]
    fn skip_region_direct_arithmetic() {
        // lo = 0.2 * 0.5 = 0.10, hi = 0.10 + 0.1 + 0.2 = 0.40.
        let s = NonresponseSkipScenario::new(0.5, 0.2, 0.1, 0.2).unwrap();
        let r = s.region();
        assert!((r.lo() - 0.10).abs() < 1e-12);
        assert!((r.hi() - 0.40).abs() < 1e-12);
    }

    #[test]
    fn skip_rejects_broken_accounting_identity() {
        let err =
            NonresponseSkipScenario::with_p_asked(0.8508, 0.4039, 0.0197, 0.0723, 0.9).unwrap_err();
        assert!(matches!(err, CoreError::AccountingIdentity { .. }));
    }

    #[test]
    fn skip_rejects_mass_above_one() {
        let err = NonresponseSkipScenario::new(0.9, 0.5, 0.05, 0.2).unwrap_err();
        assert!(matches!(err, CoreError::MassExceedsUnit { .. }));
    }
}
