//! The completed zeta function ξ(s) = π^{−s/2}Γ(s/2)ζ(s), ζ itself, an
//! independent half-plane evaluator, and the probes built on them.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{c, finite};
use crate::special_fn::{log_gamma, reciprocal_gamma, upper_incomplete_gamma_with, Estimate};
use crate::{AccuracyBudget, ComplexPoint, Error, Result, VerificationReport};

/// ξ(s) with the absolute error the evaluation attained.
///
/// The error is held to the budget's tolerance times max(1, |ξ(s)|).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct XiValue {
    pub value: ComplexPoint,
    pub attained_error: f64,
}

const EPS: f64 = f64::EPSILON;

/// Σ_{n≥1} [(πn²)^{−s/2}Γ(s/2, πn²A) + (πn²)^{−(1−s)/2}Γ((1−s)/2, πn²/A)]
/// together with its error estimate. At A = 1 this is the entire part of ξ.
fn theta_sum(s: ComplexPoint, split: f64, budget: &AccuracyBudget) -> Result<Estimate> {
    let a = s * 0.5;
    let b = (c(1.0, 0.0) - s) * 0.5;
    let mut sum = c(0.0, 0.0);
    let mut error = 0.0;
    let mut magnitude = 0.0;
    for n in 1..=budget.series_terms_max as u64 {
        let x = PI * (n * n) as f64;
        let ln_x = x.ln();
        let ga = upper_incomplete_gamma_with(a, x * split, budget)?;
        let gb = upper_incomplete_gamma_with(b, x / split, budget)?;
        let pa = (-a * ln_x).exp();
        let pb = (-b * ln_x).exp();
        let term = pa * ga.value + pb * gb.value;
        sum += term;
        error += pa.norm() * ga.error + pb.norm() * gb.error;
        magnitude += term.norm();
        // Past x > |s| every later term is below x^{|σ|}e^{−x}-type bounds
        // and shrinks faster than geometrically.
        if x * split.min(1.0 / split) > s.norm() + 2.0 && term.norm() < 1e-21 {
            return Ok(Estimate::new(
                sum,
                error + 4.0 * EPS * magnitude + term.norm(),
            ));
        }
    }
    Err(Error::Budget {
        what: "xi theta series",
        attained: error,
        tolerance: budget.abs_tol,
    })
}

/// ξ(s) for every s other than the poles 0 and 1.
pub fn xi(s: ComplexPoint) -> Result<XiValue> {
    xi_with(s, &AccuracyBudget::default())
}

pub fn xi_with(s: ComplexPoint, budget: &AccuracyBudget) -> Result<XiValue> {
    xi_split_with(s, 1.0, budget)
}

/// ξ(s) with the theta integral split at y = A instead of y = 1.
///
/// ξ(s) = ∫_A^∞ ψ(y) y^{s/2} dy/y + ∫_0^A ψ(y) y^{s/2} dy/y with
/// ψ(y) = Σ_{n≥1} e^{−πn²y}; the second piece is moved to [1/A, ∞) by
/// θ(1/y) = √y θ(y). Only A = 1 makes the result symmetric in s ↔ 1 − s
/// term by term, so any other A checks the functional equation for real.
pub fn xi_split(s: ComplexPoint, split: f64) -> Result<XiValue> {
    xi_split_with(s, split, &AccuracyBudget::default())
}

fn xi_split_with(s: ComplexPoint, split: f64, budget: &AccuracyBudget) -> Result<XiValue> {
    let s = finite(s)?;
    if !(split > 0.0) || !split.is_finite() {
        return Err(Error::domain(format!(
            "split point must be positive, got {split}"
        )));
    }
    if s == c(0.0, 0.0) || s == c(1.0, 0.0) {
        return Err(Error::Pole {
            function: "xi",
            at: s,
        });
    }
    let sum = theta_sum(s, split, budget)?;
    let one = c(1.0, 0.0);
    // A^{(s−1)/2}/(s − 1) − A^{s/2}/s
    let ln_a = split.ln();
    let poles = ((s - 1.0) * 0.5 * ln_a).exp() / (s - one) - (s * 0.5 * ln_a).exp() / s;
    let value = sum.value + poles;
    let attained_error = sum.error + 2.0 * EPS * (poles.norm() + sum.value.norm());
    // Near the poles the value itself is large; judge rounding relative to it.
    if attained_error > budget.abs_tol * value.norm().max(1.0) {
        return Err(Error::Budget {
            what: "xi",
            attained: attained_error,
            tolerance: budget.abs_tol,
        });
    }
    Ok(XiValue {
        value,
        attained_error,
    })
}

/// s(s−1)ξ(s), the entire function with no poles anywhere.
///
/// The pole terms contribute exactly 1, so this is s(s−1)Σ + 1 and stays
/// accurate right at s = 0 and s = 1.
pub fn xi_entire(s: ComplexPoint) -> Result<Estimate> {
    let s = finite(s)?;
    let sum = theta_sum(s, 1.0, &AccuracyBudget::default())?;
    let w = s * (s - 1.0);
    Ok(Estimate::new(
        w * sum.value + 1.0,
        w.norm() * sum.error + EPS,
    ))
}

fn is_trivial_zero(s: ComplexPoint) -> bool {
    s.im == 0.0 && s.re < 0.0 && s.re == s.re.round() && (s.re as i64) % 2 == 0
}

/// ζ(s) = ξ(s)π^{s/2}/Γ(s/2).
///
/// The trivial zeros −2, −4, … are returned as exact zeros and ζ(0) as
/// −1/2, the limit of ξ(s)π^{s/2}/Γ(s/2) at s = 0.
pub fn zeta(s: ComplexPoint) -> Result<ComplexPoint> {
    zeta_estimate(s).map(|e| e.value)
}

/// [`zeta`] with its error: the ξ error carried through the same factor.
/// The special values at 0 and the trivial zeros are exact.
pub fn zeta_estimate(s: ComplexPoint) -> Result<Estimate> {
    let s = finite(s)?;
    if s == c(1.0, 0.0) {
        return Err(Error::Pole {
            function: "zeta",
            at: s,
        });
    }
    if s == c(0.0, 0.0) {
        return Ok(Estimate::new(c(-0.5, 0.0), 0.0));
    }
    if is_trivial_zero(s) {
        return Ok(Estimate::new(c(0.0, 0.0), 0.0));
    }
    let x = xi(s)?;
    let factor = (s * 0.5 * PI.ln()).exp() * reciprocal_gamma(s * 0.5)?;
    let value = x.value * factor;
    Ok(Estimate::new(
        value,
        x.attained_error * factor.norm() + EPS * value.norm(),
    ))
}

// B_2, B_4, …, B_24
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// ζ(s) on Re s > 0 without going through ξ.
///
/// Writes ζ(s) = 1/(s−1) + Σ_{n≥1} ∫_n^{n+1}(n^{−s} − x^{−s}) dx, sums the
/// first N − 1 integrals exactly (which leaves Σ_{n<N} n^{−s} + N^{1−s}/(s−1))
/// and replaces the remaining ones by their Euler-Maclaurin expansion.
/// The error is the first omitted correction term.
pub fn zeta_halfplane(s: ComplexPoint, n: u64) -> Result<Estimate> {
    let s = finite(s)?;
    if !(s.re > 0.0) {
        return Err(Error::domain(format!(
            "half-plane evaluator needs Re s > 0, got {s}"
        )));
    }
    if s == c(1.0, 0.0) {
        return Err(Error::Pole {
            function: "zeta",
            at: s,
        });
    }
    if n < 2 {
        return Err(Error::domain("half-plane evaluator needs N >= 2"));
    }
    let big_n = n as f64;
    let ln_n = big_n.ln();
    // smallest terms first
    let mut sum = c(0.0, 0.0);
    for k in (1..n).rev() {
        sum += (-s * (k as f64).ln()).exp();
    }
    let n_pow = (-s * ln_n).exp();
    sum += n_pow * big_n / (s - 1.0) + n_pow * 0.5;
    // B_{2k}/(2k)! · s(s+1)⋯(s+2k−2) · N^{−s−2k+1}
    let mut rising = s;
    let mut fact = 2.0;
    let mut power = n_pow / big_n;
    let mut last = f64::INFINITY;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let term = rising * power * (b / fact);
        if term.norm() > last {
            // asymptotic series started to diverge; N is too small for s
            break;
        }
        sum += term;
        last = term.norm();
        let m = 2.0 * (k as f64 + 1.0);
        rising *= (s + (m - 1.0)) * (s + m);
        fact *= (m + 1.0) * (m + 2.0);
        power /= big_n * big_n;
        if last < 1e-17 * sum.norm() {
            break;
        }
    }
    let error = last + 4.0 * EPS * sum.norm();
    if error > 1e-6 * sum.norm().max(1.0) {
        return Err(Error::Budget {
            what: "half-plane zeta",
            attained: error,
            tolerance: 1e-6,
        });
    }
    Ok(Estimate::new(sum, error))
}

/// A cutoff for [`zeta_halfplane`] that keeps the Euler-Maclaurin tail
/// far below binary64 resolution.
pub fn halfplane_cutoff(s: ComplexPoint) -> u64 {
    (s.norm().ceil() as u64 + 30).max(50)
}

/// G(s) = π^{(s−1)/2}Γ((1−s)/2) / (π^{−s/2}Γ(s/2)), so that ζ(s) = G(s)ζ(1−s).
pub fn g_factor(s: ComplexPoint) -> Result<ComplexPoint> {
    let s = finite(s)?;
    let one = c(1.0, 0.0);
    let log_num = log_gamma((one - s) * 0.5)?;
    let log_den = log_gamma(s * 0.5)?;
    Ok(((s - 0.5) * PI.ln() + log_num - log_den).exp())
}

/// r(s) = ξ(s)/ξ(s+1).
pub fn scattering_ratio(s: ComplexPoint) -> Result<ComplexPoint> {
    let s = finite(s)?;
    if s == c(-1.0, 0.0) {
        return Err(Error::Pole {
            function: "xi(s+1)",
            at: s,
        });
    }
    Ok(xi(s)?.value / xi(s + 1.0)?.value)
}

/// Outcome of the critical-line and line-one sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvexityProbe {
    pub exponent: f64,
    /// sup over the grid of |ζ(1/2+it)| / (2+|t|)^{1/4+ε}
    pub sup_ratio: f64,
    pub sup_at: f64,
    /// min over the grid (t > 0) of |ζ(1+it)|; infinite if the grid has no t > 0
    pub min_line_one: f64,
    pub min_at: f64,
    pub points: usize,
}

/// Grid spacing of the convexity probe.
pub const CONVEXITY_STEP: f64 = 0.05;

/// Sweeps t ∈ [0, t_max] evaluating ζ(1/2+it) and ζ(1+it).
pub fn convexity_probe(t_max: f64, eps: f64) -> Result<ConvexityProbe> {
    if !(0.0..=500.0).contains(&t_max) {
        return Err(Error::domain(format!(
            "convexity probe needs 0 <= t_max <= 500, got {t_max}"
        )));
    }
    if !(eps > 0.0) {
        return Err(Error::domain("convexity probe needs eps > 0"));
    }
    let exponent = 0.25 + eps;
    let steps = (t_max / CONVEXITY_STEP).ceil() as usize;
    let ts: Vec<f64> = (0..=steps)
        .map(|j| {
            if steps == 0 {
                0.0
            } else {
                t_max * j as f64 / steps as f64
            }
        })
        .collect();
    let rows: Vec<(f64, f64, f64)> = ts
        .par_iter()
        .map(|&t| -> Result<(f64, f64, f64)> {
            let half = c(0.5, t);
            let z_half = zeta_halfplane(half, halfplane_cutoff(half))?.value.norm();
            let line_one = if t > 0.0 {
                let one = c(1.0, t);
                zeta_halfplane(one, halfplane_cutoff(one))?.value.norm()
            } else {
                f64::INFINITY
            };
            Ok((t, z_half / (2.0 + t).powf(exponent), line_one))
        })
        .collect::<Result<_>>()?;
    let mut probe = ConvexityProbe {
        exponent,
        sup_ratio: 0.0,
        sup_at: 0.0,
        min_line_one: f64::INFINITY,
        min_at: 0.0,
        points: rows.len(),
    };
    for &(t, ratio, line_one) in &rows {
        if ratio > probe.sup_ratio {
            probe.sup_ratio = ratio;
            probe.sup_at = t;
        }
        if line_one < probe.min_line_one {
            probe.min_line_one = line_one;
            probe.min_at = t;
        }
    }
    Ok(probe)
}

impl ConvexityProbe {
    /// Two reports: the sup ratio must be finite, and the reciprocal of the
    /// line-one minimum must be finite (so the minimum is positive).
    pub fn reports(&self, t_max: f64) -> [VerificationReport; 2] {
        let grid = format!(
            "t in [0, {t_max}] step {CONVEXITY_STEP}, {} points",
            self.points
        );
        let sup = VerificationReport::single(
            "convexity-sup",
            format!("{grid}; sup |zeta(1/2+it)|/(2+t)^{}", self.exponent),
            f64::MAX,
            format!("t={}", self.sup_at),
            self.sup_ratio,
        );
        let line_one = VerificationReport::single(
            "line-one-nonvanishing",
            format!("{grid}, t > 0; 1/min |zeta(1+it)|"),
            f64::MAX,
            format!("t={} min={}", self.min_at, self.min_line_one),
            1.0 / self.min_line_one,
        );
        [sup, line_one]
    }
}

/// Fits a degree-2 polynomial to s(s−1)ξ(s) sampled on a circle of radius
/// `radius` around `center` and returns the largest misfit. A surviving
/// pole would leave a misfit of order residue/radius.
pub fn entirety_residual(center: ComplexPoint, radius: f64, samples: usize) -> Result<f64> {
    let pts: Vec<(ComplexPoint, ComplexPoint)> = (0..samples)
        .map(|j| {
            let w = ComplexPoint::from_polar(radius, 2.0 * PI * j as f64 / samples as f64);
            xi_entire(center + w).map(|v| (w, v.value))
        })
        .collect::<Result<_>>()?;
    // discrete Fourier coefficients c_k = mean f(w) w^{−k}
    let coeff = |k: i32| -> ComplexPoint {
        pts.iter()
            .map(|(w, f)| f * w.powi(-k))
            .sum::<ComplexPoint>()
            / samples as f64
    };
    let (c0, c1, c2) = (coeff(0), coeff(1), coeff(2));
    Ok(pts
        .iter()
        .map(|(w, f)| (f - (c0 + c1 * w + c2 * w * w)).norm())
        .fold(0.0, f64::max))
}

/// max |s(s−1)ξ(s)| over a rectangular grid, with the maximizing point.
pub fn strip_maximum(sigmas: &[f64], ts: &[f64]) -> Result<(f64, ComplexPoint)> {
    let points: Vec<ComplexPoint> = sigmas
        .iter()
        .flat_map(|&sg| ts.iter().map(move |&t| c(sg, t)))
        .collect();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&s| xi_entire(s).map(|v| v.value.norm()))
        .collect::<Result<_>>()?;
    Ok(values.iter().zip(&points).fold(
        (0.0, c(0.0, 0.0)),
        |best, (&v, &s)| {
            if v > best.0 {
                (v, s)
            } else {
                best
            }
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta2() -> f64 {
        PI * PI / 6.0
    }

    #[test]
    fn split_point_does_not_matter() {
        for s in [c(0.5, 14.0), c(-1.5, 3.0), c(2.0, 0.0), c(0.3, 0.0)] {
            let base = xi(s).unwrap().value;
            for a in [0.5, 1.25, 3.0] {
                let v = xi_split(s, a).unwrap().value;
                assert!((v - base).norm() < 1e-14 * base.norm().max(1.0), "{s} {a}");
            }
        }
        assert!(xi_split(c(2.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn functional_equation_is_structural() {
        let a = xi(c(0.3, 4.0)).unwrap().value;
        let b = xi(c(0.7, -4.0)).unwrap().value;
        assert!((a - b).norm() < 1e-11);
    }

    #[test]
    fn residue_at_one() {
        let h = 1e-7;
        let v = xi(c(1.0 + h, 0.0)).unwrap().value * h;
        assert!((v.re - 1.0).abs() < 1e-6);
    }

    #[test]
    fn xi_at_half() {
        // π^{−1/4}Γ(1/4)ζ(1/2) with ζ(1/2) = −1.4603545088095868…
        let expected = PI.powf(-0.25) * 3.625_609_908_221_908 * -1.460_354_508_809_586_8;
        let v = xi(c(0.5, 0.0)).unwrap().value;
        assert!((v.re - expected).abs() < 1e-12, "{v} vs {expected}");
    }

    #[test]
    fn special_values() {
        assert!((zeta(c(2.0, 0.0)).unwrap().re - zeta2()).abs() < 1e-12);
        assert!((zeta(c(-1.0, 0.0)).unwrap().re + 1.0 / 12.0).abs() < 1e-12);
        assert_eq!(zeta(c(-2.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(zeta(c(-10.0, 0.0)).unwrap(), c(0.0, 0.0));
        assert_eq!(zeta(c(0.0, 0.0)).unwrap(), c(-0.5, 0.0));
        assert!(zeta(c(1.0, 0.0)).is_err());
        assert!(xi(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn halfplane_matches_xi_route() {
        let a = zeta_halfplane(c(2.0, 0.0), 10_000).unwrap().value;
        assert!((a.re - zeta2()).abs() < 1e-8);
        let s = c(0.5, 10.0);
        let b = zeta_halfplane(s, 200).unwrap().value;
        assert!((b - zeta(s).unwrap()).norm() < 1e-6);
    }

    #[test]
    fn trivial_bound_holds() {
        // |ζ(s) − 1/(s−1)| ≤ |s| ζ(3/2) at s = 1/2 + 50i
        let s = c(0.5, 50.0);
        let z = zeta_halfplane(s, 200).unwrap().value;
        let zeta_three_halves = zeta_halfplane(c(1.5, 0.0), 200).unwrap().value.re;
        assert!((z - 1.0 / (s - 1.0)).norm() <= s.norm() * zeta_three_halves);
    }

    #[test]
    fn g_factor_properties() {
        assert!((g_factor(c(0.5, 0.0)).unwrap() - 1.0).norm() < 1e-15);
        let s = c(0.25, 0.0);
        let prod = g_factor(s).unwrap() * g_factor(c(1.0, 0.0) - s).unwrap();
        assert!((prod - 1.0).norm() < 1e-14);
        let s = c(0.4, 3.0);
        let lhs = zeta(s).unwrap();
        let rhs = g_factor(s).unwrap() * zeta(c(1.0, 0.0) - s).unwrap();
        assert!((lhs - rhs).norm() < 1e-10);
        assert!(g_factor(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn scattering_ratio_at_two() {
        // ξ(2)/ξ(3) = π^{1/2} ζ(2) / (Γ(3/2) ζ(3)), ζ(3) = 1.2020569031595942
        let expected = PI.sqrt() * zeta2() / (0.5 * PI.sqrt() * 1.202_056_903_159_594_2);
        assert!((scattering_ratio(c(2.0, 0.0)).unwrap().re - expected).abs() < 1e-12);
        let s = c(0.3, 0.0);
        let r = scattering_ratio(s).unwrap();
        assert!((r * xi(s + 1.0).unwrap().value - xi(s).unwrap().value).norm() < 1e-11);
        assert!(scattering_ratio(c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn entire_at_poles() {
        assert!((xi_entire(c(1.0, 0.0)).unwrap().value - 1.0).norm() < 1e-15);
        assert!(entirety_residual(c(0.0, 0.0), 1e-3, 16).unwrap() < 1e-8);
        assert!(entirety_residual(c(1.0, 0.0), 1e-3, 16).unwrap() < 1e-8);
    }

    #[test]
    fn convexity_single_point() {
        let p = convexity_probe(0.0, 0.1).unwrap();
        assert_eq!(p.points, 1);
        let expected = 1.460_354_508_809_586_8 / 2f64.powf(0.35);
        assert!((p.sup_ratio - expected).abs() < 1e-12);
        assert!(p.min_line_one.is_infinite());
    }
}
