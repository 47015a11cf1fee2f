use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Binary64 floor on any requested absolute tolerance.
pub const MIN_ABS_TOL: f64 = 1e-13;

/// Caps on the work an evaluator may spend and the absolute error it must reach.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AccuracyBudget {
    pub abs_tol: f64,
    pub series_terms_max: usize,
    pub quadrature_panels_max: usize,
}

impl AccuracyBudget {
    pub fn new(
        abs_tol: f64,
        series_terms_max: usize,
        quadrature_panels_max: usize,
    ) -> Result<Self> {
        if !(abs_tol >= MIN_ABS_TOL) || !abs_tol.is_finite() {
            return Err(Error::domain(format!(
                "abs_tol must be finite and at least {MIN_ABS_TOL:e}, got {abs_tol:e}"
            )));
        }
        if series_terms_max == 0 || quadrature_panels_max == 0 {
            return Err(Error::domain("budget caps must be positive"));
        }
        Ok(Self {
            abs_tol,
            series_terms_max,
            quadrature_panels_max,
        })
    }

    pub fn with_tol(abs_tol: f64) -> Result<Self> {
        Self::new(
            abs_tol,
            Self::default().series_terms_max,
            Self::default().quadrature_panels_max,
        )
    }
}

impl Default for AccuracyBudget {
    fn default() -> Self {
        Self {
            abs_tol: MIN_ABS_TOL,
            series_terms_max: 20_000,
            quadrature_panels_max: 4_096,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_floor_enforced() {
        assert!(AccuracyBudget::with_tol(1e-14).is_err());
        assert!(AccuracyBudget::with_tol(f64::NAN).is_err());
        assert!(AccuracyBudget::with_tol(1e-10).is_ok());
        assert!(AccuracyBudget::new(1e-8, 0, 10).is_err());
    }
}
