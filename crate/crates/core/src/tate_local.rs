//! Local factors over the rationals: the p-adic geometric series, the
//! archimedean Gaussian integral, and partial Euler products.

use std::f64::consts::PI;

use crate::complex::{c, finite};
use crate::primes::{primes_up_to, require_prime};
use crate::quad::adaptive;
use crate::special_fn::log_gamma;
use crate::{ComplexPoint, Error, Result};

/// (Σ_{k=0}^{K} p^{−ks}, (1 − p^{−s})^{−1}).
pub fn local_factor_p(p: u64, s: ComplexPoint, k_max: u32) -> Result<(ComplexPoint, ComplexPoint)> {
    let p = require_prime(p)?;
    let s = finite(s)?;
    if !(s.re > 0.0) {
        return Err(Error::domain(format!(
            "local factor needs Re s > 0, got {s}"
        )));
    }
    let ratio = (-s * (p as f64).ln()).exp();
    // Horner from the top keeps the small terms first.
    let truncated = (0..=k_max).fold(c(0.0, 0.0), |acc, _| acc * ratio + 1.0);
    Ok((truncated, c(1.0, 0.0) / (c(1.0, 0.0) - ratio)))
}

/// (∫_ℝ e^{−πx²}|x|^{s} dx/|x| by quadrature, π^{−s/2}Γ(s/2)).
///
/// On [0, 1] the substitution x = u^q with q = max(1, 2/σ) turns the
/// x^{σ−1} endpoint singularity into the smooth u^{qσ−1}; [1, 7] is
/// integrated directly and e^{−49π} bounds what is dropped beyond.
pub fn archimedean_factor(s: ComplexPoint) -> Result<(ComplexPoint, ComplexPoint)> {
    let s = finite(s)?;
    if !(0.2..=6.0).contains(&s.re) {
        return Err(Error::domain(format!(
            "archimedean quadrature needs 0.2 <= Re s <= 6, got {s}"
        )));
    }
    let q = (2.0 / s.re).max(1.0);
    let near = adaptive(
        |u: f64| {
            if u == 0.0 {
                return c(0.0, 0.0);
            }
            let x = u.powf(q);
            ((s * q - 1.0) * u.ln()).exp() * (q * (-PI * x * x).exp())
        },
        0.0,
        1.0,
        1e-14,
        4000,
    )?;
    let far = adaptive(
        |x: f64| ((s - 1.0) * x.ln()).exp() * (-PI * x * x).exp(),
        1.0,
        7.0,
        1e-14,
        4000,
    )?;
    let quadrature = (near.value + far.value) * 2.0;
    let closed = (-s * 0.5 * PI.ln() + log_gamma(s * 0.5)?).exp();
    Ok((quadrature, closed))
}

/// ∏_{p ≤ X} (1 − p^{−s})^{−1} for Re s > 1.
pub fn euler_product_partial(s: ComplexPoint, x: u64) -> Result<ComplexPoint> {
    let s = finite(s)?;
    if !(s.re > 1.0) {
        return Err(Error::domain(format!(
            "Euler product needs Re s > 1, got {s}"
        )));
    }
    if x < 2 {
        return Err(Error::domain("Euler product needs X >= 2"));
    }
    let one = c(1.0, 0.0);
    Ok(primes_up_to(x)?
        .iter()
        .rev()
        .fold(one, |acc, &p| acc / (one - (-s * (p as f64).ln()).exp())))
}
