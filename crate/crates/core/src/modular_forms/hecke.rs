use serde::Serialize;

use super::{evaluate, GrowthBound, QExpansion};
use crate::complex::{c, finite};
use crate::primes::{divisors, gcd};
use crate::{ComplexPoint, Error, Result};

/// The scalar in front of the Hecke sum: 1/n for holomorphic forms,
/// 1/√n for Maass forms of weight 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HeckePrefactor {
    OneOverN,
    OneOverSqrtN,
}

impl HeckePrefactor {
    /// Ratio of this prefactor to 1/n.
    fn relative_to_one_over_n(self, n: u64) -> f64 {
        match self {
            HeckePrefactor::OneOverN => 1.0,
            HeckePrefactor::OneOverSqrtN => (n as f64).sqrt(),
        }
    }

    fn value(self, n: u64) -> f64 {
        match self {
            HeckePrefactor::OneOverN => 1.0 / n as f64,
            HeckePrefactor::OneOverSqrtN => 1.0 / (n as f64).sqrt(),
        }
    }
}

fn weight_of(f: &QExpansion) -> Result<i32> {
    if f.period != 1.0 {
        return Err(Error::domain("Hecke operators act on period-1 expansions"));
    }
    f.integer_weight()
        .ok_or_else(|| Error::domain("Hecke operators need integral weight"))
}

/// T_n f by its action on coefficients,
/// (T_n f)_m = Σ_{d | gcd(n, m)} d^{k−1} a_{nm/d²},
/// which is what (1/n) Σ_{ad=n} a^k Σ_{0≤b<d} f((aτ+b)/d) does to a q-series.
/// The output is truncated at ⌊M/n⌋.
pub fn hecke_tn(f: &QExpansion, n: u64, prefactor: HeckePrefactor) -> Result<QExpansion> {
    let k = weight_of(f)?;
    if n == 0 {
        return Err(Error::domain("Hecke operator index must be positive"));
    }
    let m_out = f.order() as u64 / n;
    if m_out < 1 {
        return Err(Error::domain(format!(
            "order {} is too short for T_{n}",
            f.order()
        )));
    }
    let scale = prefactor.relative_to_one_over_n(n);
    let coeffs: Vec<ComplexPoint> = (0..=m_out)
        .map(|m| {
            let g = if m == 0 { n } else { gcd(n, m) };
            divisors(g)
                .into_iter()
                .map(|d| f.coeffs[(n * m / (d * d)) as usize] * (d as f64).powi(k - 1))
                .sum::<ComplexPoint>()
                * scale
        })
        .collect();
    let e = f.growth.exponent;
    let divisor_factor: f64 = divisors(n)
        .into_iter()
        .map(|d| (d as f64).powf((k as f64 - 1.0 - 2.0 * e).max(0.0)))
        .sum();
    let growth = GrowthBound {
        constant: f.growth.constant * (n as f64).powf(e) * divisor_factor * scale,
        exponent: e,
    };
    QExpansion::new(f.weight, f.period, f.multiplier, coeffs, growth)
}

/// T_n f(τ) evaluated straight from the defining average over the matrices
/// (a, b; 0, d) with ad = n and 0 ≤ b < d.
pub fn hecke_tn_pointwise(
    f: &QExpansion,
    n: u64,
    tau: ComplexPoint,
    prefactor: HeckePrefactor,
) -> Result<ComplexPoint> {
    let k = weight_of(f)?;
    let tau = finite(tau)?;
    if n == 0 {
        return Err(Error::domain("Hecke operator index must be positive"));
    }
    let mut total = c(0.0, 0.0);
    for a in divisors(n) {
        let d = n / a;
        let mut inner = c(0.0, 0.0);
        for b in 0..d {
            inner += evaluate(f, (tau * a as f64 + b as f64) / d as f64)?.value;
        }
        total += inner * (a as f64).powi(k);
    }
    Ok(total * prefactor.value(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_forms::{delta_q_expansion, eisenstein_gk_q_expansion, tau_coefficients};

    fn mixed_weight_twelve(m: usize) -> QExpansion {
        let g = eisenstein_gk_q_expansion(12, m).unwrap();
        let d = delta_q_expansion(m).unwrap();
        let coeffs = g
            .coeffs
            .iter()
            .zip(&d.coeffs)
            .map(|(a, b)| a * 1e-3 + b * 7.0)
            .collect();
        let growth = GrowthBound {
            constant: g.growth.constant + 14.0,
            exponent: 11.0,
        };
        QExpansion::new(12.0, 1.0, 1.0, coeffs, growth).unwrap()
    }

    #[test]
    fn coefficient_action_matches_pointwise_operator() {
        // a form that is not an eigenform
        let f = mixed_weight_twelve(600);
        let points = [
            c(0.0, 1.1),
            c(0.3, 1.2),
            c(-0.4, 1.5),
            c(0.1, 2.0),
            c(0.45, 0.9),
        ];
        for n in [2u64, 3] {
            let tn = hecke_tn(&f, n, HeckePrefactor::OneOverN).unwrap();
            for &tau in &points {
                let by_coeffs = evaluate(&tn, tau).unwrap().value;
                let direct = hecke_tn_pointwise(&f, n, tau, HeckePrefactor::OneOverN).unwrap();
                assert!(
                    (by_coeffs - direct).norm() < 1e-10 * direct.norm().max(1.0),
                    "n={n} tau={tau}"
                );
            }
        }
    }

    #[test]
    fn maass_prefactor_rescales() {
        let f = delta_q_expansion(40).unwrap();
        let a = hecke_tn(&f, 4, HeckePrefactor::OneOverN).unwrap();
        let b = hecke_tn(&f, 4, HeckePrefactor::OneOverSqrtN).unwrap();
        assert!((b.coeffs[3] - a.coeffs[3] * 2.0).norm() < 1e-9);
    }

    #[test]
    fn identity_and_eigenvalues() {
        let d = delta_q_expansion(300).unwrap();
        assert_eq!(hecke_tn(&d, 1, HeckePrefactor::OneOverN).unwrap(), d);
        let t2 = hecke_tn(&d, 2, HeckePrefactor::OneOverN).unwrap();
        for m in 1..=100 {
            assert_eq!(t2.coeffs[m], d.coeffs[m] * -24.0, "m = {m}");
        }
        let t3_then_t2 = hecke_tn(
            &hecke_tn(&d, 3, HeckePrefactor::OneOverN).unwrap(),
            2,
            HeckePrefactor::OneOverN,
        )
        .unwrap();
        let t6 = hecke_tn(&d, 6, HeckePrefactor::OneOverN).unwrap();
        for m in 1..=50 {
            assert_eq!(t3_then_t2.coeffs[m], t6.coeffs[m]);
        }
        let tau = tau_coefficients(6).unwrap();
        assert_eq!(t6.coeffs[1].re as i128, tau[6]);
    }

    #[test]
    fn short_input_rejected() {
        let d = delta_q_expansion(5).unwrap();
        assert!(hecke_tn(&d, 6, HeckePrefactor::OneOverN).is_err());
    }
}
