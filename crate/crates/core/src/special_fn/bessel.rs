use std::f64::consts::PI;

use super::{reciprocal_gamma, Estimate};
use crate::complex::{c, finite};
use crate::{ComplexPoint, Error, Result};

/// Below this argument (and away from integer orders) the power series
/// route is used.
const SERIES_MAX_Y: f64 = 1.0;
/// Orders closer than this to an integer avoid the series route, whose
/// 1/sin(πν) factor has a removable singularity there.
const INTEGER_ORDER_GUARD: f64 = 0.05;

/// K_ν(y) for complex order ν and real y > 0.
///
/// For small y and non-integral ν this sums
/// K_ν = (π/2)(I_{−ν} − I_ν)/sin(πν) with the power series of I_{±ν}.
/// Everywhere else it integrates K_ν(y) = ∫₀^∞ e^{−y cosh u} cosh(νu) du
/// with the trapezoidal rule, which converges geometrically for this
/// analytic, doubly-exponentially decaying integrand.
pub fn bessel_k(order: ComplexPoint, y: f64) -> Result<Estimate> {
    let order = finite(order)?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain(format!(
            "K-Bessel needs finite y > 0, got {y}"
        )));
    }
    let dist_to_integer = (order.re - order.re.round()).hypot(order.im);
    if y <= SERIES_MAX_Y && dist_to_integer > INTEGER_ORDER_GUARD {
        series(order, y)
    } else {
        bessel_k_integral(order, y)
    }
}

fn series(nu: ComplexPoint, y: f64) -> Result<Estimate> {
    let half = 0.5 * y;
    let i_nu = |order: ComplexPoint| -> Result<(ComplexPoint, f64)> {
        // I_ν(y) = Σ (y/2)^{ν+2m} / (m! Γ(ν+m+1))
        let lead = (order * half.ln()).exp();
        let mut sum = c(0.0, 0.0);
        let mut peak: f64 = 0.0;
        let mut pow_over_fact = 1.0;
        for m in 0..200 {
            if m > 0 {
                pow_over_fact *= half * half / m as f64;
            }
            let term = reciprocal_gamma(order + (m as f64 + 1.0))? * pow_over_fact;
            sum += term;
            peak = peak.max(term.norm());
            if m > 2 && term.norm() < 1e-17 * sum.norm() {
                break;
            }
        }
        Ok((lead * sum, (lead * peak).norm()))
    };
    let (plus, peak_plus) = i_nu(nu)?;
    let (minus, peak_minus) = i_nu(-nu)?;
    let sin = (nu * PI).sin();
    let value = (minus - plus) / sin * (0.5 * PI);
    let error = 1e-15 * (peak_plus + peak_minus) * 0.5 * PI / sin.norm();
    Ok(Estimate::new(value, error))
}

/// K_ν(y) by trapezoidal quadrature of ∫₀^∞ e^{−y cosh u} cosh(νu) du.
pub fn bessel_k_integral(nu: ComplexPoint, y: f64) -> Result<Estimate> {
    let nu = finite(nu)?;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::domain(format!(
            "K-Bessel needs finite y > 0, got {y}"
        )));
    }
    // Work with e^{−y(cosh u − 1)} and restore e^{−y} at the end.
    let scale = (-y).exp();
    if scale == 0.0 {
        return Ok(Estimate::new(c(0.0, 0.0), 0.0));
    }
    let growth = nu.re.abs();
    let mut upper: f64 = 0.25;
    while y * (upper.cosh() - 1.0) - growth * upper < 45.0 {
        upper += 0.25;
    }
    let f = |u: f64| (-y * (u.cosh() - 1.0)).exp() * (nu * u).cosh();
    let mut n = 16usize;
    let mut h = upper / n as f64;
    let mut sum = f(0.0) * 0.5 + f(upper) * 0.5;
    let mut abs_sum = sum.norm();
    for j in 1..n {
        let v = f(h * j as f64);
        sum += v;
        abs_sum += v.norm();
    }
    let mut estimate = sum * h;
    for _ in 0..14 {
        // halve the step: add the midpoints
        let mut mid = c(0.0, 0.0);
        for j in 0..n {
            let v = f(h * (j as f64 + 0.5));
            mid += v;
            abs_sum += v.norm();
        }
        sum += mid;
        n *= 2;
        h *= 0.5;
        let refined = sum * h;
        let change = (refined - estimate).norm();
        estimate = refined;
        let floor = 4e-16 * abs_sum * h;
        if change <= floor.max(1e-300) || change < 1e-15 * estimate.norm() {
            return Ok(Estimate::new(estimate * scale, (change + floor) * scale));
        }
    }
    Err(Error::Budget {
        what: "K-Bessel quadrature",
        attained: 1.0,
        tolerance: 0.0,
    })
}
