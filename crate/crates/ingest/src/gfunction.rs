//! Monotone normalization of raw outcome values onto [0, 1].
//!
//! Raw outcomes live on [0, support_max]; downstream bounds work with a
//! monotone transform normalized so that g(0) = 0 and the maximum is 1.

use serde::{Deserialize, Serialize};

use crate::error::IngestError;

/// A monotone non-decreasing map from [0, support_max] onto [0, 1].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GFunction {
    /// g(y) = y / support_max.
    LinearScaled,
    /// Piecewise-linear interpolation through `(y, g)` breakpoints.
    /// Must start at (0, 0), end at (support_max, 1), with y strictly
    /// increasing and g non-decreasing.
    TabulatedMonotone { points: Vec<(f64, f64)> },
}

impl GFunction {
    pub fn validate(&self, support_max: f64) -> Result<(), IngestError> {
        if !(support_max > 0.0) || !support_max.is_finite() {
            return Err(IngestError::InvalidSchema(format!(
                "support_max = {support_max} must be a positive finite number"
            )));
        }
        if let GFunction::TabulatedMonotone { points } = self {
            if points.len() < 2 {
                return Err(IngestError::InvalidSchema(
                    "tabulated g needs at least two breakpoints".into(),
                ));
            }
            let first = points[0];
            let last = points[points.len() - 1];
            if first != (0.0, 0.0) {
                return Err(IngestError::InvalidSchema("tabulated g must start at (0, 0)".into()));
            }
            if last.0 != support_max || last.1 != 1.0 {
                return Err(IngestError::InvalidSchema(format!(
                    "tabulated g must end at (support_max, 1) = ({support_max}, 1)"
                )));
            }
            for pair in points.windows(2) {
                if pair[1].0 <= pair[0].0 {
                    return Err(IngestError::InvalidSchema(
                        "tabulated g breakpoints must have strictly increasing y".into(),
                    ));
                }
                if pair[1].1 < pair[0].1 {
                    return Err(IngestError::InvalidSchema(
                        "tabulated g must be non-decreasing".into(),
                    ));
                }
            }
            if points.iter().any(|&(_, g)| !(0.0..=1.0).contains(&g)) {
                return Err(IngestError::InvalidSchema("tabulated g values must lie in [0, 1]".into()));
            }
        }
        Ok(())
    }

    /// Evaluate at `y`, clamping to the support.
    pub fn apply(&self, y: f64, support_max: f64) -> f64 {
        let y = y.clamp(0.0, support_max);
        match self {
            GFunction::LinearScaled => y / support_max,
            GFunction::TabulatedMonotone { points } => {
                let idx = points.partition_point(|&(py, _)| py <= y);
                if idx == 0 {
                    return points[0].1;
                }
                if idx == points.len() {
                    return points[points.len() - 1].1;
                }
                let (y0, g0) = points[idx - 1];
                let (y1, g1) = points[idx];
                g0 + (g1 - g0) * (y - y0) / (y1 - y0)
            }
        }
    }
}

impl Default for GFunction {
    fn default() -> Self {
        GFunction::LinearScaled
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_scales_onto_unit_interval() {
        let g = GFunction::LinearScaled;
        assert_eq!(g.apply(0.0, 100.0), 0.0);
        assert_eq!(g.apply(40.39, 100.0), 0.4039);
        assert_eq!(g.apply(100.0, 100.0), 1.0);
        assert_eq!(g.apply(120.0, 100.0), 1.0); // clamped
    }

    #[test]
    fn tabulated_interpolates_between_breakpoints() {
        let g = GFunction::TabulatedMonotone {
            points: vec![(0.0, 0.0), (50.0, 0.9), (100.0, 1.0)],
        };
        g.validate(100.0).unwrap();
        assert_eq!(g.apply(0.0, 100.0), 0.0);
        assert!((g.apply(25.0, 100.0) - 0.45).abs() < 1e-15);
        assert!((g.apply(75.0, 100.0) - 0.95).abs() < 1e-15);
        assert_eq!(g.apply(100.0, 100.0), 1.0);
    }

    #[test]
    fn tabulated_validation_catches_shape_errors() {
        let bad_start = GFunction::TabulatedMonotone { points: vec![(1.0, 0.0), (100.0, 1.0)] };
        assert!(bad_start.validate(100.0).is_err());
        let bad_end = GFunction::TabulatedMonotone { points: vec![(0.0, 0.0), (100.0, 0.9)] };
        assert!(bad_end.validate(100.0).is_err());
        let decreasing = GFunction::TabulatedMonotone {
            points: vec![(0.0, 0.0), (50.0, 0.8), (60.0, 0.5), (100.0, 1.0)],
        };
        assert!(decreasing.validate(100.0).is_err());
        assert!(GFunction::LinearScaled.validate(0.0).is_err());
    }
}
