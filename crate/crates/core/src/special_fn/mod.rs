//! Special functions on which everything else is built: log-gamma,
//! upper incomplete gamma, the K-Bessel function of real argument, and
//! Jacobi's theta function on the imaginary axis.
//!
//! All routines are pure functions of their arguments and safe to call
//! from any thread.

mod bessel;
mod gamma;
mod incgamma;
mod lanczos;
mod theta;

use serde::Serialize;

use crate::ComplexPoint;

pub use bessel::{bessel_k, bessel_k_integral};
pub use gamma::{gamma, log_gamma, log_sin_pi, reciprocal_gamma};
pub use incgamma::{upper_incomplete_gamma, upper_incomplete_gamma_with};
pub use theta::{theta, theta_direct, theta_truncation_index};

/// A computed value together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub value: ComplexPoint,
    pub error: f64,
}

impl Estimate {
    pub fn new(value: ComplexPoint, error: f64) -> Self {
        Self { value, error }
    }
}

/// Is `s` a non-positive integer (a pole of Γ)?
pub fn is_nonpositive_integer(s: ComplexPoint) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re == s.re.round()
}
