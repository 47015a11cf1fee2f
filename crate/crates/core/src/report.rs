//! The record every verification check produces.

use serde::{Deserialize, Serialize};

/// Upper bound on the number of worst offenders a report keeps.
pub const MAX_DETAILS: usize = 10;

/// One offending grid point: where it was evaluated and its residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Detail {
    pub input: String,
    pub residual: f64,
}

/// Outcome of a named check over a grid.
///
/// `pass` is always `max_abs_error <= tolerance`; a NaN error never passes.
/// `details` holds at most [`MAX_DETAILS`] entries, largest residual first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    #[serde(rename = "check")]
    pub check_name: String,
    #[serde(rename = "grid")]
    pub grid_description: String,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub runtime_ms: u64,
    pub details: Vec<Detail>,
}

impl VerificationReport {
    /// Builds a report from every residual that was measured.
    pub fn from_residuals<I>(
        check: impl Into<String>,
        grid: impl Into<String>,
        tolerance: f64,
        residuals: I,
    ) -> Self
    where
        I: IntoIterator<Item = (String, f64)>,
    {
        let mut all: Vec<Detail> = residuals
            .into_iter()
            .map(|(input, residual)| Detail { input, residual })
            .collect();
        let max_abs_error = all.iter().fold(0.0_f64, |m, d| {
            if d.residual.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(d.residual)
            }
        });
        // NaN sorts first so broken points are never hidden.
        all.sort_by(|a, b| {
            let key = |x: f64| if x.is_nan() { f64::INFINITY } else { x };
            key(b.residual)
                .total_cmp(&key(a.residual))
                .then_with(|| a.input.cmp(&b.input))
        });
        all.truncate(MAX_DETAILS);
        Self::assemble(check.into(), grid.into(), max_abs_error, tolerance, all)
    }

    /// A report with a single measured quantity.
    pub fn single(
        check: impl Into<String>,
        grid: impl Into<String>,
        tolerance: f64,
        input: impl Into<String>,
        residual: f64,
    ) -> Self {
        Self::from_residuals(check, grid, tolerance, [(input.into(), residual)])
    }

    fn assemble(
        check_name: String,
        grid_description: String,
        max_abs_error: f64,
        tolerance: f64,
        details: Vec<Detail>,
    ) -> Self {
        let pass = max_abs_error <= tolerance;
        Self {
            check_name,
            grid_description,
            max_abs_error,
            tolerance,
            pass,
            runtime_ms: 0,
            details,
        }
    }

    /// Re-judges the report against another tolerance.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.pass = self.max_abs_error <= tolerance;
        self
    }

    pub fn with_runtime_ms(mut self, runtime_ms: u64) -> Self {
        self.runtime_ms = runtime_ms;
        self
    }
}
