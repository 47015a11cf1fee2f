//! Modular forms as truncated q-expansions: Ramanujan's Δ, the
//! holomorphic Eisenstein series G_k, and θ; evaluation with a certified
//! tail bound, Hecke operators, and point-wise modularity residuals.

mod delta;
mod eisenstein_gk;
mod hecke;
pub(crate) mod lattice;

use std::f64::consts::PI;

use serde::Serialize;

use crate::complex::{c, finite};
use crate::special_fn::Estimate;
use crate::{AccuracyBudget, ComplexPoint, Error, Result};

pub use delta::{delta_q_expansion, tau_coefficients, MAX_DELTA_ORDER};
pub use eisenstein_gk::{eisenstein_gk_lattice, eisenstein_gk_q_expansion};
pub use hecke::{hecke_tn, hecke_tn_pointwise, HeckePrefactor};

/// |a_n| ≤ constant · n^exponent for n ≥ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthBound {
    pub constant: f64,
    pub exponent: f64,
}

/// f(τ) = Σ_{n=0}^{M} a_n e^{2πinτ/λ}, a form of weight k with
/// f(−1/τ) = C (τ/i)^k f(τ).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QExpansion {
    pub weight: f64,
    pub period: f64,
    pub multiplier: f64,
    pub coeffs: Vec<ComplexPoint>,
    pub growth: GrowthBound,
}

impl QExpansion {
    pub fn new(
        weight: f64,
        period: f64,
        multiplier: f64,
        coeffs: Vec<ComplexPoint>,
        growth: GrowthBound,
    ) -> Result<Self> {
        if !(weight > 0.0) || !(period > 0.0) || !weight.is_finite() || !period.is_finite() {
            return Err(Error::domain("weight and period must be positive"));
        }
        if multiplier != 1.0 && multiplier != -1.0 {
            return Err(Error::domain(format!(
                "multiplier must be +1 or -1, got {multiplier}"
            )));
        }
        if coeffs.len() < 2 {
            return Err(Error::domain("a q-expansion needs at least a_0 and a_1"));
        }
        for a in &coeffs {
            finite(*a)?;
        }
        Ok(Self {
            weight,
            period,
            multiplier,
            coeffs,
            growth,
        })
    }

    /// Truncation order M.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_cusp_form(&self) -> bool {
        self.coeffs[0] == c(0.0, 0.0)
    }

    pub fn integer_weight(&self) -> Option<i32> {
        (self.weight == self.weight.round()).then_some(self.weight as i32)
    }

    /// Bound on Σ_{n>M} |a_n| r^n with r = e^{−2π Im τ/λ}.
    pub fn tail_bound(&self, im_tau: f64) -> f64 {
        let m = self.order() as f64;
        let log_r = -2.0 * PI * im_tau / self.period;
        let GrowthBound { constant, exponent } = self.growth;
        // Consecutive terms shrink by at most r·((n+1)/n)^d ≤ r·((M+2)/(M+1))^d.
        let ratio = (log_r + exponent * ((m + 2.0) / (m + 1.0)).ln()).exp();
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        constant * ((m + 1.0).ln() * exponent + log_r * (m + 1.0)).exp() / (1.0 - ratio)
    }
}

/// θ(τ) = 1/2 Σ_{n∈Z} e^{πin²τ} truncated at q^{M}: weight 1/2, period 2.
pub fn theta_q_expansion(m: usize) -> Result<QExpansion> {
    let mut coeffs = vec![c(0.0, 0.0); m.max(1) + 1];
    coeffs[0] = c(0.5, 0.0);
    let mut j = 1;
    while j * j <= m.max(1) {
        coeffs[j * j] = c(1.0, 0.0);
        j += 1;
    }
    QExpansion::new(
        0.5,
        2.0,
        1.0,
        coeffs,
        GrowthBound {
            constant: 1.0,
            exponent: 0.0,
        },
    )
}

/// f(τ) with the truncation tail bound as its error.
pub fn evaluate(f: &QExpansion, tau: ComplexPoint) -> Result<Estimate> {
    evaluate_with(f, tau, AccuracyBudget::default().abs_tol)
}

/// As [`evaluate`], failing when the tail bound exceeds abs_tol·max(1, |f(τ)|).
pub fn evaluate_with(f: &QExpansion, tau: ComplexPoint, abs_tol: f64) -> Result<Estimate> {
    let tau = finite(tau)?;
    if !(tau.im > 0.0) {
        return Err(Error::domain(format!(
            "evaluation needs Im tau > 0, got {tau}"
        )));
    }
    let q = (c(0.0, 2.0 * PI / f.period) * tau).exp();
    // Horner, highest order first
    let sum = f
        .coeffs
        .iter()
        .rev()
        .fold(c(0.0, 0.0), |acc, a| acc * q + a);
    let magnitude: f64 = f
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, a)| a.norm() * q.norm().powi(n as i32))
        .sum();
    let tail = f.tail_bound(tau.im);
    if tail > abs_tol * sum.norm().max(1.0) {
        return Err(Error::Budget {
            what: "q-expansion tail",
            attained: tail,
            tolerance: abs_tol,
        });
    }
    Ok(Estimate::new(sum, tail + 4.0 * f64::EPSILON * magnitude))
}

/// An integer matrix of determinant one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::domain(format!(
                "({a}, {b}; {c}, {d}) does not have determinant 1"
            )));
        }
        Ok(Self { a, b, c, d })
    }

    /// τ ↦ −1/τ
    pub const S: Self = Self {
        a: 0,
        b: -1,
        c: 1,
        d: 0,
    };

    /// τ ↦ τ + n
    pub fn translation(n: i64) -> Self {
        Self {
            a: 1,
            b: n,
            c: 0,
            d: 1,
        }
    }

    pub fn apply(&self, tau: ComplexPoint) -> ComplexPoint {
        (tau * self.a as f64 + self.b as f64) / (tau * self.c as f64 + self.d as f64)
    }
}

/// |f(γτ) − j(γ, τ) f(τ)|.
///
/// For S the automorphy factor is C (τ/i)^k with the principal branch, the
/// convention that also covers half-integral weight. Translations have
/// factor 1 (f is invariant only under multiples of its period). Any other
/// γ needs integral weight and uses (cτ + d)^k.
pub fn modularity_check(f: &QExpansion, gamma: UnimodularMatrix, tau: ComplexPoint) -> Result<f64> {
    let tau = finite(tau)?;
    let factor = if gamma == UnimodularMatrix::S {
        (tau / c(0.0, 1.0)).powf(f.weight) * f.multiplier
    } else if gamma.c == 0 && gamma.a == 1 && gamma.d == 1 {
        c(1.0, 0.0)
    } else {
        let k = f.integer_weight().ok_or_else(|| {
            Error::domain("automorphy factors beyond S and translations need integral weight")
        })?;
        (tau * gamma.c as f64 + gamma.d as f64).powi(k)
    };
    let lhs = evaluate(f, gamma.apply(tau))?.value;
    let rhs = factor * evaluate(f, tau)?.value;
    Ok((lhs - rhs).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::theta;

    #[test]
    fn theta_two_evaluators() {
        let f = theta_q_expansion(60).unwrap();
        for &t in &[0.8, 1.0, 2.5] {
            let v = evaluate(&f, c(0.0, t)).unwrap().value;
            assert!((v.re - theta(t).unwrap()).abs() < 1e-14 && v.im.abs() < 1e-15);
        }
    }

    #[test]
    fn tail_bound_high_in_the_plane() {
        let f = delta_q_expansion(5).unwrap();
        assert!(f.tail_bound(10.0) < 1e-25);
    }

    #[test]
    fn theta_modularity() {
        let f = theta_q_expansion(400).unwrap();
        let tau = c(0.3, 1.1);
        assert!(modularity_check(&f, UnimodularMatrix::translation(2), tau).unwrap() < 1e-14);
        assert!(modularity_check(&f, UnimodularMatrix::S, c(0.0, 2.0)).unwrap() < 1e-10);
        assert!(modularity_check(&f, UnimodularMatrix::S, tau).unwrap() < 1e-10);
        // θ is not invariant under τ ↦ τ + 1
        assert!(modularity_check(&f, UnimodularMatrix::translation(1), tau).unwrap() > 0.01);
    }

    #[test]
    fn delta_value_and_modularity() {
        let f = delta_q_expansion(50).unwrap();
        let v = evaluate(&f, c(0.0, 1.0)).unwrap().value;
        assert!((v.re - 0.001_785_369_850_642_152).abs() < 1e-15);
        let f = delta_q_expansion(200).unwrap();
        assert!(modularity_check(&f, UnimodularMatrix::S, c(0.3, 1.0)).unwrap() < 1e-8);
        let g = UnimodularMatrix::new(2, 1, 1, 1).unwrap();
        assert!(modularity_check(&f, g, c(0.1, 1.3)).unwrap() < 1e-8);
    }

    #[test]
    fn rejects_bad_matrix_and_low_points() {
        assert!(UnimodularMatrix::new(1, 1, 1, 1).is_err());
        let f = delta_q_expansion(10).unwrap();
        assert!(evaluate(&f, c(0.0, 0.01)).is_err());
        assert!(evaluate(&f, c(0.0, -1.0)).is_err());
    }
}
