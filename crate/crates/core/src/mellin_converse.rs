//! Mellin inversion along a vertical line: recovering f(ix) from Φ(s).
//!
//! f(ix) − a_0 = (1/2πi) ∫_{(c)} x^{−s} Φ(s) ds for c to the right of every
//! pole. The line is cut at |t| = T and the dropped part is estimated from
//! a decay model A e^{−π|t|/4} fitted to |Φ| on T/2 ≤ |t| ≤ T; the estimate
//! is reported, not proved, so reconstruction is certified only up to that
//! model.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::c;
use crate::hecke_l::{phi_completed, LSeriesDescriptor};
use crate::quad::gauss_legendre;
use crate::{ComplexPoint, Error, Result};

/// Gauss-Legendre nodes per panel.
const PANEL_ORDER: usize = 16;

/// A truncated vertical contour Re s = c, |Im s| ≤ T.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContourSpec {
    pub sigma: f64,
    pub t_cut: f64,
    /// Minimum panel count; more are used when the integrand oscillates faster.
    pub panels: usize,
}

impl ContourSpec {
    pub fn new(sigma: f64, t_cut: f64, panels: usize) -> Result<Self> {
        if !sigma.is_finite() || !(t_cut > 0.0) || !t_cut.is_finite() || panels == 0 {
            return Err(Error::domain(
                "contour needs finite sigma, T > 0 and at least one panel",
            ));
        }
        Ok(Self {
            sigma,
            t_cut,
            panels,
        })
    }
}

/// A reconstructed value f(ix) and the fitted bound on the dropped tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Reconstruction {
    pub value: ComplexPoint,
    pub tail_bound: f64,
    pub panels: usize,
}

/// Abscissa of absolute convergence of Σ a_n n^{−s} for the q-expansion
/// coefficients, from the recorded growth bound.
pub fn abscissa(desc: &LSeriesDescriptor) -> f64 {
    desc.form.growth.exponent + 1.0
}

/// (1/2π) ∫_{−T}^{T} x^{−c−it} Φ(c+it) dt plus the fitted tail bound.
fn line_integral(desc: &LSeriesDescriptor, x: f64, spec: &ContourSpec) -> Result<Reconstruction> {
    let ContourSpec { sigma, t_cut, .. } = *spec;
    let ln_x = x.ln();
    // x^{−it} turns |ln x|·T/2π times; Φ's own phase turns about ln(2+T)·T/2π times.
    let turns = (ln_x.abs() + (2.0 + t_cut).ln()) * t_cut / PI;
    let panels = spec
        .panels
        .max((turns * 8.0 / PANEL_ORDER as f64).ceil() as usize * 2);
    let h = 2.0 * t_cut / panels as f64;
    let rule = gauss_legendre(PANEL_ORDER);
    let integrand = |t: f64| -> Result<ComplexPoint> {
        let s = c(sigma, t);
        Ok((-s * ln_x).exp() * phi_completed(s, &desc.form)?.value)
    };
    let pieces: Vec<ComplexPoint> = (0..panels)
        .into_par_iter()
        .map(|j| {
            let a = -t_cut + h * j as f64;
            let mut acc = c(0.0, 0.0);
            for (node, weight) in rule.nodes.iter().zip(&rule.weights) {
                acc += integrand(a + 0.5 * h * (node + 1.0))? * (0.5 * h * weight);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let integral: ComplexPoint = pieces.iter().sum::<ComplexPoint>() / (2.0 * PI);
    // Fit A in |Φ(c ± it)| ≤ A e^{−π|t|/4} on T/2 ≤ |t| ≤ T.
    let mut amplitude: f64 = 0.0;
    for j in 0..=16 {
        let t = t_cut * (0.5 + j as f64 / 32.0);
        for sign in [-1.0, 1.0] {
            let v = phi_completed(c(sigma, sign * t), &desc.form)?.value.norm();
            amplitude = amplitude.max(v * (PI * t / 4.0).exp());
        }
    }
    // both tails: (2/2π) x^{−c} ∫_T^∞ A e^{−πt/4} dt
    let tail_bound = x.powf(-sigma) * amplitude * (4.0 / PI) * (-PI * t_cut / 4.0).exp() / PI;
    Ok(Reconstruction {
        value: integral,
        tail_bound,
        panels,
    })
}

/// f(ix) = a_0 + (1/2πi) ∫_{(c)} x^{−s} Φ(s) ds, with c past the abscissa
/// of absolute convergence.
pub fn reconstruct(desc: &LSeriesDescriptor, x: f64, spec: &ContourSpec) -> Result<Reconstruction> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "reconstruction needs x > 0, got {x}"
        )));
    }
    // Φ has poles at s = k and s = 0 only when a_0 ≠ 0.
    let floor = if desc.form.is_cusp_form() {
        abscissa(desc)
    } else {
        abscissa(desc).max(desc.form.weight)
    };
    if !(spec.sigma > floor) {
        return Err(Error::domain(format!(
            "contour sigma {} must exceed {floor}",
            spec.sigma
        )));
    }
    let mut r = line_integral(desc, x, spec)?;
    r.value += desc.form.coeffs[0];
    Ok(r)
}

/// The same value from the reflected line Re s = k − c: moving the contour
/// across the poles of Φ at s = k and s = 0 picks up C a_0 x^{−k} and −a_0,
/// so f(ix) = C a_0 x^{−k} + (1/2πi) ∫_{(k−c)} x^{−s} Φ(s) ds.
pub fn reconstruct_shifted(
    desc: &LSeriesDescriptor,
    x: f64,
    spec: &ContourSpec,
) -> Result<Reconstruction> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(format!(
            "reconstruction needs x > 0, got {x}"
        )));
    }
    let k = desc.form.weight;
    let reflected = ContourSpec {
        sigma: k - spec.sigma,
        ..*spec
    };
    if !(reflected.sigma < 0.0) {
        return Err(Error::domain(
            "the reflected contour must lie left of s = 0",
        ));
    }
    let mut r = line_integral(desc, x, &reflected)?;
    r.value += desc.form.coeffs[0] * desc.form.multiplier * x.powf(-k);
    Ok(r)
}

/// |f(ix) − C x^{−k} f(i/x)| with both values reconstructed from Φ alone.
pub fn modularity_from_fe(desc: &LSeriesDescriptor, x: f64, spec: &ContourSpec) -> Result<f64> {
    let here = reconstruct(desc, x, spec)?.value;
    let there = reconstruct(desc, 1.0 / x, spec)?.value;
    Ok((here - there * desc.form.multiplier * x.powf(-desc.form.weight)).norm())
}
