//! Closed subintervals of [0, 1].
//!
//! An identification region for a mean of a bounded (normalized) outcome or
//! for a probability is always a closed interval inside the unit interval.
//! Its width is the informativeness measure the design choice trades off
//! against cost: the narrower the interval, the more the data reveal.

use serde::Serialize;
use std::fmt;

use crate::error::{CoreError, PROB_DRIFT};

/// A closed subinterval of [0, 1]. Invariant: `0 <= lo <= hi <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitInterval {
    lo: f64,
    hi: f64,
}

impl UnitInterval {
    /// Build an interval, clamping endpoint drift of at most 1e-12 and
    /// rejecting anything worse.
    pub fn new(lo: f64, hi: f64) -> Result<Self, CoreError> {
        if !lo.is_finite()
            || !hi.is_finite()
            || lo > hi + PROB_DRIFT
            || lo < -PROB_DRIFT
            || hi > 1.0 + PROB_DRIFT
        {
            return Err(CoreError::InvalidInterval { lo, hi });
        }
        let lo = lo.clamp(0.0, 1.0);
        let hi = hi.clamp(lo, 1.0);
        Ok(Self { lo, hi })
    }

    /// The degenerate interval [x, x].
    pub fn point(x: f64) -> Result<Self, CoreError> {
        Self::new(x, x)
    }

    /// The full unit interval [0, 1].
    pub const fn full() -> Self {
        Self { lo: 0.0, hi: 1.0 }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// hi - lo, in [0, 1].
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Whether `x` lies in the interval, up to slack `eps` on either side.
    pub fn contains(&self, x: f64, eps: f64) -> bool {
        self.lo - eps <= x && x <= self.hi + eps
    }

    /// Whether `self` is contained in `other`, up to slack `eps`.
    pub fn is_subset_of(&self, other: &UnitInterval, eps: f64) -> bool {
        other.lo - eps <= self.lo && self.hi <= other.hi + eps
    }
}

impl fmt::Display for UnitInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.4}, {:.4}]", self.lo, self.hi)
    }
}

/// Identification region under design option None: nothing is asked, so the
/// data carry no information and every value in [0, 1] remains feasible.
pub fn region_none() -> UnitInterval {
    UnitInterval::full()
}
