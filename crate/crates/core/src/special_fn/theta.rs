use std::f64::consts::PI;

use crate::{Error, Result};

/// Relative truncation target used by [`theta`] and [`theta_direct`].
const THETA_TOL: f64 = 1e-17;

/// Smallest n with e^{−πn²t} < tol·(1 − e^{−πt}).
///
/// Beyond that index the remaining terms are dominated by a geometric
/// series of ratio e^{−πt}, so the omitted tail is below `tol`.
pub fn theta_truncation_index(t: f64, tol: f64) -> u64 {
    let bound = (tol * (-(-PI * t).exp_m1())).ln();
    // e^{−πn²t} < bound  ⇔  n² > −ln(bound)/(πt)
    let n_sq = -bound / (PI * t);
    let mut n = n_sq.max(1.0).sqrt().floor() as u64;
    while (-(PI * (n * n) as f64 * t)).exp() >= tol * (-(-PI * t).exp_m1()) {
        n += 1;
    }
    n.max(1)
}

fn check(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("theta needs finite t > 0, got {t}")))
    }
}

/// θ(it) = 1/2 + Σ_{n≥1} e^{−πn²t}, summed without any transformation.
pub fn theta_direct(t: f64) -> Result<f64> {
    check(t)?;
    let last = theta_truncation_index(t, THETA_TOL);
    // smallest terms first
    let tail: f64 = (1..last)
        .rev()
        .map(|n| (-PI * (n * n) as f64 * t).exp())
        .sum();
    Ok(0.5 + tail)
}

/// θ(it) for t > 0. Small t is mapped through θ(it) = t^{−1/2} θ(i/t)
/// so the sum never needs more than a handful of terms.
pub fn theta(t: f64) -> Result<f64> {
    check(t)?;
    if t < 1.0 {
        Ok(theta_direct(1.0 / t)? / t.sqrt())
    } else {
        theta_direct(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_t_tail_is_tiny() {
        // the whole tail is dominated by its first term e^{−20π}
        assert!(theta(20.0).unwrap() - 0.5 < 1e-27);
        assert!((-20.0 * PI).exp() / (1.0 - (-20.0 * PI).exp()) < 1e-27);
    }

    #[test]
    fn fixed_point_of_inversion() {
        assert_eq!(theta(1.0).unwrap(), theta_direct(1.0).unwrap());
    }

    #[test]
    fn direct_sums_satisfy_jacobi_at_four() {
        let lhs = theta_direct(4.0).unwrap();
        let rhs = 0.5 * theta_direct(0.25).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn truncation_index_bounds_tail() {
        for &t in &[0.05, 0.3, 1.0, 7.0] {
            let n = theta_truncation_index(t, 1e-15);
            let first_omitted = (-PI * (n * n) as f64 * t).exp();
            assert!(first_omitted < 1e-15);
            if n > 1 {
                let last_kept = (-PI * ((n - 1) * (n - 1)) as f64 * t).exp();
                assert!(last_kept >= 1e-15 * (1.0 - (-PI * t).exp()));
            }
        }
    }

    #[test]
    fn rejects_bad_t() {
        assert!(theta(0.0).is_err());
        assert!(theta(f64::INFINITY).is_err());
    }
}
