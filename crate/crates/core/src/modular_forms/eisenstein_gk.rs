use std::f64::consts::PI;

use super::lattice::{exterior_integral, weighted_box_sum};
use super::{GrowthBound, QExpansion};
use crate::complex::{c, finite};
use crate::special_fn::Estimate;
use crate::zeta_core::zeta;
use crate::{ComplexPoint, Error, Result};

fn check_weight(k: u32) -> Result<()> {
    if k < 4 || !k.is_multiple_of(2) {
        return Err(Error::domain(format!("G_k needs even k >= 4, got {k}")));
    }
    Ok(())
}

/// σ_t(n) for n = 0..=m in floating point (σ_t(0) = 0), by a divisor sieve.
fn sigma_table(m: usize, t: i32) -> Vec<f64> {
    let mut sigma = vec![0.0; m + 1];
    for d in 1..=m {
        let dt = (d as f64).powi(t);
        for j in (d..=m).step_by(d) {
            sigma[j] += dt;
        }
    }
    sigma
}

/// G_k = 2ζ(k) + (2(2πi)^k/(k−1)!) Σ σ_{k−1}(n) q^n through q^M.
///
/// G_k(−1/τ) = τ^k G_k(τ) = i^k (τ/i)^k G_k(τ), so the multiplier in the
/// (τ/i)^k convention is (−1)^{k/2}.
pub fn eisenstein_gk_q_expansion(k: u32, m: usize) -> Result<QExpansion> {
    check_weight(k)?;
    let m = m.max(1);
    let kf = k as f64;
    let factorial: f64 = (1..k).map(f64::from).product();
    let lead = c(0.0, 2.0 * PI).powu(k) * (2.0 / factorial);
    let sigma = sigma_table(m, k as i32 - 1);
    let mut coeffs: Vec<ComplexPoint> = sigma.iter().map(|&s| lead * s).collect();
    coeffs[0] = zeta(c(kf, 0.0))? * 2.0;
    let multiplier = if (k / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    // σ_{k−1}(n) ≤ ζ(k−1) n^{k−1}
    let growth = GrowthBound {
        constant: lead.norm() * zeta(c(kf - 1.0, 0.0))?.re,
        exponent: kf - 1.0,
    };
    QExpansion::new(kf, 1.0, multiplier, coeffs, growth)
}

fn corrected_box_sum(k: u32, tau: ComplexPoint, r: i64) -> ComplexPoint {
    let ki = k as i32;
    let body = weighted_box_sum(tau, r, |w| w.powi(-ki));
    // ∫_ρ^∞ (re^{iθ})^{−k} r dr = e^{−ikθ} ρ^{2−k}/(k−2)
    let tail = exterior_integral(tau, r as f64, |theta, rho| {
        ComplexPoint::from_polar(rho.powi(2 - ki) / (k as f64 - 2.0), -(k as f64) * theta)
    });
    body + tail
}

/// G_k(τ) = Σ'_{(m,n)} (mτ + n)^{−k} summed over |m|, |n| ≤ R.
///
/// The box sum uses trapezoid weights on its boundary and adds the integral
/// of the summand over the exterior of the box, which leaves an O(R^{−k})
/// truncation error. The reported error is the change from R/2 to R.
pub fn eisenstein_gk_lattice(k: u32, tau: ComplexPoint, r: i64) -> Result<Estimate> {
    check_weight(k)?;
    let tau = finite(tau)?;
    if !(tau.im > 0.0) || r < 2 {
        return Err(Error::domain("lattice sum needs Im tau > 0 and R >= 2"));
    }
    let full = corrected_box_sum(k, tau, r);
    let half = corrected_box_sum(k, tau, r / 2);
    Ok(Estimate::new(full, (full - half).norm()))
}
