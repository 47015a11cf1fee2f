//! Box-truncated lattice sums over mτ + n with a continuum correction for
//! the part of the plane outside the box.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::complex::c;
use crate::quad::gauss_legendre;
use crate::ComplexPoint;

/// Σ_{|m|,|n| ≤ R, (m,n) ≠ 0} w_{mn} f(mτ + n) with trapezoid weights:
/// 1 inside the box, 1/2 on its edges, 1/4 at its corners.
pub(crate) fn weighted_box_sum<F>(tau: ComplexPoint, r: i64, f: F) -> ComplexPoint
where
    F: Fn(ComplexPoint) -> ComplexPoint + Sync,
{
    let rows: Vec<ComplexPoint> = (-r..=r)
        .into_par_iter()
        .map(|m| {
            let wm = if m.abs() == r { 0.5 } else { 1.0 };
            let base = tau * m as f64;
            let mut row = c(0.0, 0.0);
            for n in -r..=r {
                if m == 0 && n == 0 {
                    continue;
                }
                let wn = if n.abs() == r { 0.5 } else { 1.0 };
                row += f(base + n as f64) * (wm * wn);
            }
            row
        })
        .collect();
    rows.iter().sum()
}

/// Distance from 0 to the boundary of {mτ + n : |m|, |n| ≤ R} in direction θ.
pub(crate) fn box_radius(tau: ComplexPoint, r: f64, theta: f64) -> f64 {
    let (sin, cos) = theta.sin_cos();
    // w = ρe^{iθ} has m = ρ sinθ / Im τ and n = ρ(cosθ − sinθ Re τ / Im τ)
    let m_rate = sin.abs() / tau.im;
    let n_rate = (cos - sin * tau.re / tau.im).abs();
    r / m_rate.max(n_rate)
}

/// (1/Im τ) ∫_0^{2π} g(θ, ρ(θ)) dθ where ρ is [`box_radius`].
///
/// For a summand f(w) this is the integral of f over the exterior of the
/// box once g holds the radial integral ∫_ρ^∞ f(re^{iθ}) r dr; dividing by
/// Im τ converts area in the w-plane to lattice-point density. The angular
/// integral is split at the box corners, where ρ has kinks.
pub(crate) fn exterior_integral<G>(tau: ComplexPoint, r: f64, g: G) -> ComplexPoint
where
    G: Fn(f64, f64) -> ComplexPoint,
{
    let mut corners: Vec<f64> = [tau + 1.0, tau - 1.0, -tau - 1.0, -tau + 1.0]
        .iter()
        .map(|w| w.arg().rem_euclid(2.0 * PI))
        .collect();
    corners.sort_by(f64::total_cmp);
    let rule = gauss_legendre(24);
    let mut total = c(0.0, 0.0);
    for i in 0..corners.len() {
        let a = corners[i];
        let b = if i + 1 < corners.len() {
            corners[i + 1]
        } else {
            corners[0] + 2.0 * PI
        };
        let sub = 4;
        let h = (b - a) / sub as f64;
        for j in 0..sub {
            let lo = a + h * j as f64;
            total += rule.integrate(|t| g(t, box_radius(tau, r, t)), lo, lo + h);
        }
    }
    total / tau.im
}
