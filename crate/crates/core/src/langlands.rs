//! Satake parameters and the local factors built from them: symmetric and
//! exterior powers, Rankin-Selberg products, and the statistics of a_p
//! (Ramanujan bound, Sato-Tate moments and histogram, Sarnak's integrality
//! argument).

use std::f64::consts::PI;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{c, finite};
use crate::modular_forms::tau_coefficients;
use crate::primes::{primes_up_to, require_prime};
use crate::quad::gauss_legendre;
use crate::{ComplexPoint, Error, Result, VerificationReport};

/// Kim-Sarnak exponent: p^{−7/64} ≤ |α_p| ≤ p^{7/64}.
pub const KIM_SARNAK_EXPONENT: f64 = 7.0 / 64.0;
/// Largest moment order accepted by [`semicircle_moment`].
pub const MAX_MOMENT: u32 = 20;

/// Local parameters α_{p,1}, …, α_{p,n} at a prime p.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SatakeData {
    pub p: u64,
    pub alphas: Vec<ComplexPoint>,
}

impl SatakeData {
    pub fn new(p: u64, alphas: Vec<ComplexPoint>) -> Result<Self> {
        require_prime(p)?;
        if alphas.is_empty() {
            return Err(Error::domain("Satake data needs at least one parameter"));
        }
        for a in &alphas {
            finite(*a)?;
        }
        Ok(Self { p, alphas })
    }

    pub fn degree(&self) -> usize {
        self.alphas.len()
    }

    /// The standard local factor ∏ (1 − α_j p^{−s})^{−1}.
    pub fn standard_local(&self, s: ComplexPoint) -> Result<ComplexPoint> {
        euler_factor(&self.alphas, self.p, s)
    }
}

/// ∏_j (1 − r_j p^{−s})^{−1}.
pub fn euler_factor(roots: &[ComplexPoint], p: u64, s: ComplexPoint) -> Result<ComplexPoint> {
    let s = finite(s)?;
    let p_s = (-s * (p as f64).ln()).exp();
    let mut product = c(1.0, 0.0);
    for r in roots {
        let linear = 1.0 - r * p_s;
        if linear.norm() == 0.0 {
            return Err(Error::Pole {
                function: "local factor",
                at: s,
            });
        }
        product /= linear;
    }
    finite(product)
}

/// Roots of x² − a_p x + 1: the root with |α| ≥ 1 (ties broken toward
/// Im α ≥ 0) first, then 1/α.
pub fn satake_from_ap(a_p: f64, p: u64) -> Result<SatakeData> {
    if !a_p.is_finite() {
        return Err(Error::NonFinite(c(a_p, 0.0)));
    }
    let disc = a_p * a_p - 4.0;
    let (alpha, beta) = if disc <= 0.0 {
        let alpha = c(0.5 * a_p, 0.5 * (-disc).sqrt());
        (alpha, alpha.conj())
    } else {
        let big = 0.5 * (a_p.abs() + disc.sqrt()) * a_p.signum();
        (c(big, 0.0), c(1.0 / big, 0.0))
    };
    SatakeData::new(p, vec![alpha, beta])
}

/// Products α_{i_1}⋯α_{i_k} over multi-indices i_1 ≤ … ≤ i_k, in
/// lexicographic order.
pub fn sym_power_roots(alphas: &[ComplexPoint], k: usize) -> Vec<ComplexPoint> {
    fn walk(
        alphas: &[ComplexPoint],
        k: usize,
        start: usize,
        strict: bool,
        acc: ComplexPoint,
        out: &mut Vec<ComplexPoint>,
    ) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..alphas.len() {
            walk(
                alphas,
                k - 1,
                if strict { i + 1 } else { i },
                strict,
                acc * alphas[i],
                out,
            );
        }
    }
    let mut out = Vec::new();
    walk(alphas, k, 0, false, c(1.0, 0.0), &mut out);
    out
}

/// Products over strictly increasing multi-indices i_1 < … < i_k.
pub fn ext_power_roots(alphas: &[ComplexPoint], k: usize) -> Vec<ComplexPoint> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k == 0 || k > alphas.len() {
        return out;
    }
    loop {
        out.push(idx.iter().map(|&i| alphas[i]).product());
        // advance to the next k-subset in lexicographic order
        let n = alphas.len();
        let Some(pos) = (0..k).rev().find(|&j| idx[j] < n - k + j) else {
            return out;
        };
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// ∏_{j=0}^{k} (1 − α^j β^{k−j} p^{−s})^{−1} for degree-2 data.
pub fn sym_power_local(d: &SatakeData, k: usize, s: ComplexPoint) -> Result<ComplexPoint> {
    if d.degree() != 2 || k == 0 {
        return Err(Error::domain(
            "symmetric power needs degree-2 data and k >= 1",
        ));
    }
    let (alpha, beta) = (d.alphas[0], d.alphas[1]);
    let roots: Vec<ComplexPoint> = (0..=k)
        .map(|j| alpha.powu(j as u32) * beta.powu((k - j) as u32))
        .collect();
    euler_factor(&roots, d.p, s)
}

/// Symmetric k-th power local factor for data of any degree.
pub fn sym_power_local_gln(d: &SatakeData, k: usize, s: ComplexPoint) -> Result<ComplexPoint> {
    if k == 0 {
        return Err(Error::domain("symmetric power needs k >= 1"));
    }
    euler_factor(&sym_power_roots(&d.alphas, k), d.p, s)
}

/// Exterior k-th power local factor, 1 ≤ k ≤ n.
pub fn ext_power_local(d: &SatakeData, k: usize, s: ComplexPoint) -> Result<ComplexPoint> {
    if k == 0 || k > d.degree() {
        return Err(Error::domain(format!(
            "exterior power needs 1 <= k <= {}, got {k}",
            d.degree()
        )));
    }
    euler_factor(&ext_power_roots(&d.alphas, k), d.p, s)
}

/// The roots α_j β_k of the tensor product, row-major in j.
pub fn rankin_selberg_roots(d1: &SatakeData, d2: &SatakeData) -> Result<Vec<ComplexPoint>> {
    if d1.p != d2.p {
        return Err(Error::domain(format!(
            "Satake data at different primes {} and {}",
            d1.p, d2.p
        )));
    }
    Ok(d1
        .alphas
        .iter()
        .flat_map(|a| d2.alphas.iter().map(move |b| a * b))
        .collect())
}

/// ∏_{j,k} (1 − α_j β_k p^{−s})^{−1}.
pub fn rankin_selberg_local(
    d1: &SatakeData,
    d2: &SatakeData,
    s: ComplexPoint,
) -> Result<ComplexPoint> {
    euler_factor(&rankin_selberg_roots(d1, d2)?, d1.p, s)
}

/// The Sato-Tate measure (2/π) sin²θ dθ on [0, π], equivalently
/// (1/2π) √(4 − x²) dx on [−2, 2] with x = 2 cos θ.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct SemicircleMeasure;

impl SemicircleMeasure {
    pub fn density_theta(&self, theta: f64) -> f64 {
        if (0.0..=PI).contains(&theta) {
            2.0 / PI * theta.sin().powi(2)
        } else {
            0.0
        }
    }

    pub fn density_x(&self, x: f64) -> f64 {
        if x.abs() <= 2.0 {
            (4.0 - x * x).sqrt() / (2.0 * PI)
        } else {
            0.0
        }
    }

    /// Measure of [a, b] ⊂ [0, π] in the θ variable.
    pub fn mass_theta(&self, a: f64, b: f64) -> f64 {
        let primitive = |t: f64| (t - t.sin() * t.cos()) / PI;
        primitive(b.clamp(0.0, PI)) - primitive(a.clamp(0.0, PI))
    }

    pub fn moment(&self, m: u32) -> Result<f64> {
        semicircle_moment(m)
    }
}

/// (1/2π) ∫_{−2}^{2} x^m √(4 − x²) dx by Gauss-Legendre quadrature in θ,
/// where the integrand (2/π)(2cos θ)^m sin²θ is a trigonometric polynomial.
pub fn semicircle_moment(m: u32) -> Result<f64> {
    if m > MAX_MOMENT {
        return Err(Error::domain(format!(
            "moment order {m} exceeds {MAX_MOMENT}"
        )));
    }
    let rule = gauss_legendre(64);
    let v = rule.integrate(
        |t| {
            c(
                2.0 / PI * (2.0 * t.cos()).powi(m as i32) * t.sin().powi(2),
                0.0,
            )
        },
        0.0,
        PI,
    );
    Ok(v.re)
}

/// Prime-indexed coefficients: exact integers and their normalization
/// a_p = τ(p)/p^{11/2}.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrimeCoefficients {
    pub name: String,
    pub primes: Vec<u64>,
    pub integers: Vec<i128>,
    pub normalized: Vec<f64>,
}

impl PrimeCoefficients {
    /// τ(p) and τ(p)/p^{11/2} for primes p ≤ X.
    pub fn delta(x: u64) -> Result<Self> {
        let tau = tau_coefficients(x as usize)?;
        let primes: Vec<u64> = primes_up_to(x)?.to_vec();
        let integers: Vec<i128> = primes.iter().map(|&p| tau[p as usize]).collect();
        let normalized = primes
            .iter()
            .zip(&integers)
            .map(|(&p, &t)| t as f64 / (p as f64).powf(5.5))
            .collect();
        Ok(Self {
            name: "delta".into(),
            primes,
            integers,
            normalized,
        })
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Restriction to p ≤ X.
    pub fn up_to(&self, x: u64) -> Self {
        let n = self.primes.partition_point(|&p| p <= x);
        Self {
            name: self.name.clone(),
            primes: self.primes[..n].to_vec(),
            integers: self.integers[..n].to_vec(),
            normalized: self.normalized[..n].to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentRow {
    pub m: u32,
    pub empirical: f64,
    pub target: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HistogramBin {
    pub bin_center: f64,
    pub empirical_density: f64,
    pub target_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SatoTateReport {
    pub x: u64,
    pub prime_count: usize,
    /// Primes with |a_p| > 2, left out of the histogram.
    pub ramanujan_violations: usize,
    pub moments: Vec<MomentRow>,
    pub histogram: Vec<HistogramBin>,
    /// Σ (empirical mass − target mass)² / target mass over the bins.
    pub discrepancy: f64,
    pub reports: Vec<VerificationReport>,
}

/// Tolerance on |S_m/π(X) − M_m|: 0.1 for m ≤ 2 and 0.3 beyond.
pub fn moment_tolerance(m: u32) -> f64 {
    if m <= 2 {
        0.1
    } else {
        0.3
    }
}

/// Moments S_m(X)/π(X) for m ≤ m_max against the semicircle, and a θ_p
/// histogram with `bins` bins against (2/π) sin²θ.
pub fn sato_tate_report(
    coeffs: &PrimeCoefficients,
    x: u64,
    m_max: u32,
    bins: usize,
) -> Result<SatoTateReport> {
    if bins == 0 {
        return Err(Error::domain("histogram needs at least one bin"));
    }
    let data = coeffs.up_to(x);
    let count = data.len();
    if count == 0 {
        return Err(Error::domain(format!("no primes up to {x}")));
    }
    let moments = (0..=m_max)
        .map(|m| {
            let sum: f64 = data.normalized.iter().map(|a| a.powi(m as i32)).sum();
            Ok(MomentRow {
                m,
                empirical: sum / count as f64,
                target: semicircle_moment(m)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let width = PI / bins as f64;
    let mut counts = vec![0usize; bins];
    let mut violations = 0;
    for a in &data.normalized {
        if a.abs() > 2.0 {
            violations += 1;
            continue;
        }
        let theta = (a / 2.0).acos();
        counts[((theta / width) as usize).min(bins - 1)] += 1;
    }
    let mu = SemicircleMeasure;
    let mut discrepancy = 0.0;
    let histogram = counts
        .iter()
        .enumerate()
        .map(|(i, &k)| {
            let lo = width * i as f64;
            let mass = mu.mass_theta(lo, lo + width);
            let empirical = k as f64 / count as f64;
            if mass > 0.0 {
                discrepancy += (empirical - mass).powi(2) / mass;
            }
            HistogramBin {
                bin_center: lo + 0.5 * width,
                empirical_density: empirical / width,
                target_density: mass / width,
            }
        })
        .collect();
    let grid = |ms: &str| format!("m in {ms}, primes p <= {x} ({count} primes), {}", data.name);
    let tier = |lo: u32, hi: u32| {
        moments
            .iter()
            .filter(|r| (lo..=hi).contains(&r.m))
            .map(|r| (format!("m={}", r.m), (r.empirical - r.target).abs()))
            .collect::<Vec<_>>()
    };
    let mut reports = vec![VerificationReport::from_residuals(
        "sato-tate-moments-low",
        grid("1..2"),
        moment_tolerance(1),
        tier(1, 2.min(m_max)),
    )];
    if m_max >= 3 {
        reports.push(VerificationReport::from_residuals(
            "sato-tate-moments-high",
            grid(&format!("3..{m_max}")),
            moment_tolerance(3),
            tier(3, m_max),
        ));
    }
    Ok(SatoTateReport {
        x,
        prime_count: count,
        ramanujan_violations: violations,
        moments,
        histogram,
        discrepancy,
        reports,
    })
}

/// Outcome of the Ramanujan and Kim-Sarnak window check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RamanujanReport {
    pub max_abs_ap: f64,
    pub violations: Vec<u64>,
    /// min over p of (7/64) log p − |log |α_p||.
    pub min_log_margin: f64,
    pub report: VerificationReport,
}

/// Checks |a_p| ≤ 2 for every p ≤ X. The residual per prime is
/// max(0, |a_p| − 2), so the report passes iff there is no violation.
pub fn ramanujan_kim_sarnak_check(coeffs: &PrimeCoefficients, x: u64) -> Result<RamanujanReport> {
    let data = coeffs.up_to(x);
    let mut max_abs: f64 = 0.0;
    let mut violations = Vec::new();
    let mut min_margin = f64::INFINITY;
    let mut residuals = Vec::with_capacity(data.len());
    for (&p, &a) in data.primes.iter().zip(&data.normalized) {
        max_abs = max_abs.max(a.abs());
        if a.abs() > 2.0 {
            violations.push(p);
        }
        let alpha = satake_from_ap(a, p)?.alphas[0];
        min_margin =
            min_margin.min(KIM_SARNAK_EXPONENT * (p as f64).ln() - alpha.norm().ln().abs());
        residuals.push((format!("p={p}"), (a.abs() - 2.0).max(0.0)));
    }
    let report = VerificationReport::from_residuals(
        "ramanujan",
        format!("primes p <= {x}, {}", data.name),
        0.0,
        residuals,
    );
    Ok(RamanujanReport {
        max_abs_ap: max_abs,
        violations,
        min_log_margin: min_margin,
        report,
    })
}

/// Deligne's bound in exact integers: τ(p)² ≤ 4p^{11} for all p ≤ X.
/// The residual is max(0, τ(p)² − 4p^{11}) as a float.
pub fn deligne_check(x: u64) -> Result<VerificationReport> {
    let tau = tau_coefficients(x as usize)?;
    let primes = primes_up_to(x)?;
    let residuals: Vec<(String, f64)> = primes
        .par_iter()
        .map(|&p| {
            let t = BigInt::from(tau[p as usize]);
            let excess = &t * &t - BigInt::from(4) * BigInt::from(p).pow(11);
            let r = if excess > BigInt::from(0) {
                excess.to_string().parse::<f64>().unwrap_or(f64::INFINITY)
            } else {
                0.0
            };
            (format!("p={p}"), r)
        })
        .collect();
    Ok(VerificationReport::from_residuals(
        "deligne",
        format!("tau(p)^2 <= 4p^11 for primes p <= {x}, exact"),
        0.0,
        residuals,
    ))
}

/// P(x) = x²(4 − x²)(x² − 1) = −x⁶ + 5x⁴ − 4x².
pub fn sarnak_polynomial(x: f64) -> f64 {
    let x2 = x * x;
    x2 * (4.0 - x2) * (x2 - 1.0)
}

/// P at an integer, exactly.
pub fn sarnak_polynomial_int(n: i64) -> Result<i128> {
    let n2 = (n as i128)
        .checked_mul(n as i128)
        .ok_or(Error::IntegerOverflow("squaring"))?;
    n2.checked_mul(4 - n2)
        .and_then(|v| v.checked_mul(n2 - 1))
        .ok_or(Error::IntegerOverflow("evaluating P"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SarnakReport {
    /// (1/π(X)) Σ_{p ≤ X} P(a_p).
    pub empirical_average: f64,
    /// ∫ P dμ from the semicircle moments: −M₆ + 5M₄ − 4M₂.
    pub semicircle_integral: f64,
    /// semicircle_integral − max over primes of P(a_p), which is ≥ 1
    /// whenever every a_p is an integer.
    pub contradiction_margin: f64,
    pub report: VerificationReport,
}

/// Sarnak's integrality argument. If the normalized a_p are integers then
/// |a_p| ≤ 2 forces a_p ∈ {0, ±1, ±2}, where P vanishes, while P ≤ 0 at
/// every other integer; but ∫ P dμ = 1 under Sato-Tate. The report checks
/// the integral against 1.
pub fn sarnak_integrality_test(primes: &[u64], a_p: &[i64], x: u64) -> Result<SarnakReport> {
    if primes.len() != a_p.len() {
        return Err(Error::domain("one coefficient per prime is required"));
    }
    let mut total: i128 = 0;
    let mut worst = i128::MIN;
    let mut count = 0usize;
    for (&p, &a) in primes.iter().zip(a_p) {
        if p > x {
            break;
        }
        let v = sarnak_polynomial_int(a)?;
        total = total
            .checked_add(v)
            .ok_or(Error::IntegerOverflow("summing P(a_p)"))?;
        worst = worst.max(v);
        count += 1;
    }
    if count == 0 {
        return Err(Error::domain(format!("no primes up to {x}")));
    }
    let integral =
        -semicircle_moment(6)? + 5.0 * semicircle_moment(4)? - 4.0 * semicircle_moment(2)?;
    let report = VerificationReport::single(
        "sarnak-integral",
        "-M6 + 5M4 - 4M2 by quadrature",
        1e-10,
        "P",
        (integral - 1.0).abs(),
    );
    Ok(SarnakReport {
        empirical_average: total as f64 / count as f64,
        semicircle_integral: integral,
        contradiction_margin: integral - worst as f64,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn satake_conventions() {
        let d = satake_from_ap(2.0, 3).unwrap();
        assert_eq!(d.alphas, vec![c(1.0, 0.0), c(1.0, 0.0)]);
        let d = satake_from_ap(0.0, 5).unwrap();
        assert_eq!(d.alphas[0], c(0.0, 1.0));
        let a2 = -24.0 / 2f64.powf(5.5);
        assert!((a2 + 0.530_330).abs() < 1e-6);
        let d = satake_from_ap(a2, 2).unwrap();
        let (alpha, beta) = (d.alphas[0], d.alphas[1]);
        assert!((alpha + 1.0 / alpha - a2).norm() < 1e-12);
        assert!((alpha * beta - 1.0).norm() < 1e-12 && (alpha + beta - a2).norm() < 1e-12);
        let d = satake_from_ap(-2.5, 7).unwrap();
        assert!(d.alphas[0].norm() >= 1.0 && (d.alphas[0] * d.alphas[1] - 1.0).norm() < 1e-15);
        assert!(satake_from_ap(1.0, 4).is_err());
    }

    #[test]
    fn symmetric_powers() {
        let s = c(2.0, 0.0);
        let d = satake_from_ap(0.0, 3).unwrap();
        let one = sym_power_local(&d, 1, s).unwrap();
        assert!((one - d.standard_local(s).unwrap()).norm() < 1e-15);
        // α = i, β = −i: α², αβ, β² = −1, 1, −1
        let p2 = 1.0 / 9.0;
        let expected = 1.0 / ((1.0 + p2) * (1.0 - p2) * (1.0 + p2));
        assert!((sym_power_local(&d, 2, s).unwrap() - expected).norm() < 1e-15);
        assert_eq!(sym_power_roots(&d.alphas, 2).len(), 3);
        assert!(
            (sym_power_local_gln(&d, 2, s).unwrap() - sym_power_local(&d, 2, s).unwrap()).norm()
                < 1e-15
        );
    }

    #[test]
    fn exterior_powers() {
        let s = c(1.5, 0.3);
        let d = SatakeData::new(5, vec![c(0.6, 0.8), c(-1.0, 0.0), c(0.0, 1.0)]).unwrap();
        let top = ext_power_local(&d, 3, s).unwrap();
        let det: ComplexPoint = d.alphas.iter().product();
        assert!((top - euler_factor(&[det], 5, s).unwrap()).norm() < 1e-15);
        assert_eq!(ext_power_roots(&d.alphas, 2).len(), 3);
        assert!(ext_power_local(&d, 4, s).is_err());
        let g = satake_from_ap(0.7, 11).unwrap();
        let zeta_factor = 1.0 / (1.0 - (-s * 11f64.ln()).exp());
        assert!((ext_power_local(&g, 2, s).unwrap() - zeta_factor).norm() < 1e-15);
    }

    #[test]
    fn rankin_selberg() {
        let s = c(3.0, 0.0);
        let d = satake_from_ap(-24.0 / 2f64.powf(5.5), 2).unwrap();
        let trivial = SatakeData::new(2, vec![c(1.0, 0.0)]).unwrap();
        assert!(
            (rankin_selberg_local(&d, &trivial, s).unwrap() - d.standard_local(s).unwrap()).norm()
                < 1e-15
        );
        let zeta_factor = 1.0 / (1.0 - 2f64.powi(-3));
        let rhs = sym_power_local(&d, 2, s).unwrap() * zeta_factor;
        assert!((rankin_selberg_local(&d, &d, s).unwrap() - rhs).norm() < 1e-12);
        let e = SatakeData::new(2, vec![c(1.0, 0.0); 3]).unwrap();
        assert_eq!(rankin_selberg_roots(&d, &e).unwrap().len(), 6);
        let other = SatakeData::new(3, vec![c(1.0, 0.0)]).unwrap();
        assert!(rankin_selberg_local(&d, &other, s).is_err());
    }

    #[test]
    fn semicircle() {
        assert!((semicircle_moment(0).unwrap() - 1.0).abs() < 1e-14);
        assert!(semicircle_moment(1).unwrap().abs() < 1e-14);
        assert!((semicircle_moment(6).unwrap() - 5.0).abs() < 1e-12);
        assert!(semicircle_moment(21).is_err());
        let mu = SemicircleMeasure;
        assert!((mu.mass_theta(0.0, PI) - 1.0).abs() < 1e-15);
        let rule = gauss_legendre(64);
        assert!((rule.integrate(|x| c(mu.density_x(x), 0.0), -2.0, 2.0).re - 1.0).abs() < 1e-3);
    }

    #[test]
    fn sarnak_polynomial_values() {
        for n in -2..=2 {
            assert_eq!(sarnak_polynomial_int(n).unwrap(), 0);
        }
        assert_eq!(sarnak_polynomial_int(3).unwrap(), -360);
        assert_eq!(sarnak_polynomial(3.0), -360.0);
        let primes = [2, 3, 5, 7, 11, 13];
        let r = sarnak_integrality_test(&primes, &[0, 0, 2, 0, 0, 2], 100).unwrap();
        assert_eq!(r.empirical_average, 0.0);
        assert!(r.report.pass && (r.contradiction_margin - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ramanujan_fault_injection() {
        let mut coeffs = PrimeCoefficients::delta(1000).unwrap();
        let clean = ramanujan_kim_sarnak_check(&coeffs, 1000).unwrap();
        assert!(clean.report.pass && clean.violations.is_empty() && clean.max_abs_ap < 2.0);
        assert!((clean.min_log_margin - KIM_SARNAK_EXPONENT * 2f64.ln()).abs() < 1e-12);
        coeffs.normalized[10] = 2.5;
        let dirty = ramanujan_kim_sarnak_check(&coeffs, 1000).unwrap();
        assert_eq!(dirty.violations, vec![coeffs.primes[10]]);
        assert!(!dirty.report.pass);
    }

    #[test]
    fn small_sato_tate() {
        let coeffs = PrimeCoefficients::delta(2000).unwrap();
        let r = sato_tate_report(&coeffs, 2000, 4, 10).unwrap();
        assert_eq!(r.moments[0].empirical, 1.0);
        assert_eq!(r.histogram.len(), 10);
        let mass: f64 = r
            .histogram
            .iter()
            .map(|b| b.empirical_density * PI / 10.0)
            .sum();
        assert!((mass - 1.0).abs() < 1e-12);
    }
}
