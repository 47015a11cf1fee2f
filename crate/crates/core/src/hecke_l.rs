//! Completed L-functions Φ(s) = (2π/λ)^{−s}Γ(s)Σ a_n n^{−s} of modular forms,
//! their Euler products, and twisted functional equations.

use std::f64::consts::PI;

use serde::Serialize;

use crate::complex::{c, finite};
use crate::dirichlet::{gauss_sum, DirichletCharacter};
use crate::modular_forms::{delta_q_expansion, theta_q_expansion, GrowthBound, QExpansion};
use crate::primes::primes_up_to;
use crate::special_fn::{log_gamma, upper_incomplete_gamma, Estimate};
use crate::{ComplexPoint, Error, Result, VerificationReport};

/// Dirichlet data of a completed L-function.
///
/// `coeffs[n]` is the analytically normalized a_n = b_n / n^{shift}, where
/// b_n are the q-expansion coefficients held in `form`. `gamma_shifts` are
/// the μ_j of Π_j Γ_R(s + μ_j) in the normalized variable, and the
/// functional equation reads Λ(s) = w Q^{1/2−s} Λ(1−s) there.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LSeriesDescriptor {
    pub name: String,
    pub form: QExpansion,
    pub shift: f64,
    pub coeffs: Vec<ComplexPoint>,
    pub gamma_shifts: Vec<f64>,
    pub conductor: u64,
    pub sign: ComplexPoint,
}

impl LSeriesDescriptor {
    pub fn new(
        name: impl Into<String>,
        form: QExpansion,
        shift: f64,
        gamma_shifts: Vec<f64>,
        conductor: u64,
        sign: ComplexPoint,
    ) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::domain("conductor must be positive"));
        }
        if (sign.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "sign must have modulus 1, got {sign}"
            )));
        }
        let coeffs = form
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| {
                if n == 0 {
                    *a
                } else {
                    a / (n as f64).powf(shift)
                }
            })
            .collect();
        Ok(Self {
            name: name.into(),
            form,
            shift,
            coeffs,
            gamma_shifts,
            conductor,
            sign,
        })
    }

    /// Ramanujan's Δ: weight 12, coefficients τ(n)/n^{11/2}.
    pub fn delta(m: usize) -> Result<Self> {
        Self::new(
            "delta",
            delta_q_expansion(m)?,
            5.5,
            vec![5.5, 6.5],
            1,
            c(1.0, 0.0),
        )
    }

    /// θ with λ = 2 and k = 1/2, whose Φ is π^{−s}Γ(s)ζ(2s).
    pub fn theta(m: usize) -> Result<Self> {
        Self::new(
            "theta",
            theta_q_expansion(m)?,
            0.0,
            vec![0.0],
            1,
            c(1.0, 0.0),
        )
    }

    /// |a_n| ≤ K n^d for the normalized coefficients.
    pub fn growth(&self) -> GrowthBound {
        GrowthBound {
            constant: self.form.growth.constant,
            exponent: self.form.growth.exponent - self.shift,
        }
    }
}

/// Σ_{n≥1} a_n [b_n^{−s}Γ(s, b_n A) + C b_n^{−(k−s)}Γ(k−s, b_n/A)] with
/// b_n = 2πn/λ, stopping once the terms are negligible.
fn split_integral_sum(s: ComplexPoint, f: &QExpansion, split: f64) -> Result<Estimate> {
    let k = f.weight;
    let reflected = c(k, 0.0) - s;
    let mut sum = c(0.0, 0.0);
    let mut error = 0.0;
    let mut magnitude = 0.0;
    for (n, a) in f.coeffs.iter().enumerate().skip(1) {
        let b = 2.0 * PI * n as f64 / f.period;
        if *a != c(0.0, 0.0) {
            let ln_b = b.ln();
            let g1 = upper_incomplete_gamma(s, b * split)?;
            let g2 = upper_incomplete_gamma(reflected, b / split)?;
            let p1 = (-s * ln_b).exp();
            let p2 = (-reflected * ln_b).exp() * f.multiplier;
            let term = a * (p1 * g1.value + p2 * g2.value);
            sum += term;
            magnitude += term.norm();
            error += a.norm() * (p1.norm() * g1.error + p2.norm() * g2.error);
        }
        // Beyond b > |s| + k each bracket is below 2 b^{k/2+|t|}e^{−b}-type bounds;
        // require the coefficient-weighted bound itself to be negligible.
        if b * split.min(1.0 / split) > s.norm() + k + 2.0 {
            let bound = f.growth.constant
                * (n as f64).powf(f.growth.exponent)
                * 2.0
                * (-b * split.min(1.0 / split) + (s.re.abs() + k) * b.ln()).exp();
            if bound < 1e-18 * magnitude.max(1e-300) || bound < 1e-30 {
                return Ok(Estimate::new(
                    sum,
                    error + 4.0 * f64::EPSILON * magnitude + bound,
                ));
            }
        }
    }
    Err(Error::Budget {
        what: "completed L-function series (q-expansion too short)",
        attained: magnitude,
        tolerance: 0.0,
    })
}

/// Φ(s) for every s (off s = 0, k when a_0 ≠ 0), from the symmetric
/// split-integral representation evaluated term by term with incomplete gammas.
pub fn phi_completed(s: ComplexPoint, f: &QExpansion) -> Result<Estimate> {
    phi_completed_split(s, f, 1.0)
}

/// Φ(s) with the Mellin integral split at y = A. For A ≠ 1 the two halves
/// of Φ(s) and Φ(k − s) use different incomplete gammas, so comparing them
/// tests modularity instead of restating it.
pub fn phi_completed_split(s: ComplexPoint, f: &QExpansion, split: f64) -> Result<Estimate> {
    let s = finite(s)?;
    if !(split > 0.0) || !split.is_finite() {
        return Err(Error::domain(format!(
            "split point must be positive, got {split}"
        )));
    }
    let k = c(f.weight, 0.0);
    let a0 = f.coeffs[0];
    if a0 != c(0.0, 0.0) && (s == c(0.0, 0.0) || s == k) {
        return Err(Error::Pole {
            function: "Phi",
            at: s,
        });
    }
    let body = split_integral_sum(s, f, split)?;
    // C a_0 A^{s−k}/(s − k) − a_0 A^s/s
    let ln_a = split.ln();
    let poles = if a0 == c(0.0, 0.0) {
        c(0.0, 0.0)
    } else {
        a0 * f.multiplier * ((s - k) * ln_a).exp() / (s - k) - a0 * (s * ln_a).exp() / s
    };
    Ok(Estimate::new(
        body.value + poles,
        body.error + 2.0 * f64::EPSILON * poles.norm(),
    ))
}

/// (2π/λ)^{−s}Γ(s) Σ_{n≤N} a_n n^{−s}, the Dirichlet side of Φ.
pub fn phi_dirichlet(s: ComplexPoint, f: &QExpansion, n_max: usize) -> Result<ComplexPoint> {
    let s = finite(s)?;
    let n_max = n_max.min(f.order());
    let series: ComplexPoint = (1..=n_max)
        .rev()
        .map(|n| f.coeffs[n] * (-s * (n as f64).ln()).exp())
        .sum();
    Ok((-s * (2.0 * PI / f.period).ln() + log_gamma(s)?).exp() * series)
}

/// |Σ_{n≤X} a_n n^{−s} − ∏_{p≤X}(1 − a_p p^{−s} + p^{−2s})^{−1}| with the
/// normalized coefficients of a level-one eigenform.
pub fn euler_product_gap(desc: &LSeriesDescriptor, s: ComplexPoint, x: u64) -> Result<f64> {
    let s = finite(s)?;
    if x < 2 || x as usize > desc.form.order() {
        return Err(Error::domain(format!(
            "X must be in 2..={}",
            desc.form.order()
        )));
    }
    let series: ComplexPoint = (1..=x as usize)
        .rev()
        .map(|n| desc.coeffs[n] * (-s * (n as f64).ln()).exp())
        .sum();
    let one = c(1.0, 0.0);
    let product = primes_up_to(x)?.iter().rev().fold(one, |acc, &p| {
        let ps = (-s * (p as f64).ln()).exp();
        acc / (one - desc.coeffs[p as usize] * ps + ps * ps)
    });
    Ok((series - product).norm())
}

/// Partial Dirichlet series against partial Euler product at X/100, X/10
/// and X. The report's error is the gap at X; the details list every gap.
pub fn euler_product_check(
    desc: &LSeriesDescriptor,
    s: ComplexPoint,
    x: u64,
    tolerance: f64,
) -> Result<VerificationReport> {
    let xs: Vec<u64> = [x / 100, x / 10, x]
        .into_iter()
        .filter(|&v| v >= 2)
        .collect();
    let gaps: Vec<(u64, f64)> = xs
        .iter()
        .map(|&v| euler_product_gap(desc, s, v).map(|g| (v, g)))
        .collect::<Result<_>>()?;
    let (_, final_gap) = *gaps.last().expect("X >= 2 is always included");
    let mut report = VerificationReport::single(
        "euler-product",
        format!("{} at s={s}, X in {xs:?}", desc.name),
        tolerance,
        format!("X={x}"),
        final_gap,
    );
    report.details = gaps
        .iter()
        .rev()
        .map(|&(v, g)| crate::report::Detail {
            input: format!("X={v}"),
            residual: g,
        })
        .collect();
    report
        .details
        .sort_by(|a, b| b.residual.total_cmp(&a.residual));
    Ok(report)
}

/// Λ(s, χ) and the pieces of its split-integral form for a level-one
/// eigenform of weight k twisted by a primitive χ mod r.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwistSides {
    /// (2π)^{−s}Γ(s) Σ a_n χ(n) n^{−s} by direct summation
    pub dirichlet: ComplexPoint,
    /// I_χ(s) + w_χ r^{k−1−2s} I_χ̄(k−s)
    pub split: ComplexPoint,
    /// w_χ = i^k g(χ)²
    pub root_number: ComplexPoint,
}

/// I_χ(s) = ∫_{1/r}^∞ f_χ(iy) y^{s−1} dy = Σ a_n χ(n) (2πn)^{−s} Γ(s, 2πn/r).
fn twisted_partial_integral(
    f: &QExpansion,
    chi: &DirichletCharacter,
    s: ComplexPoint,
) -> Result<ComplexPoint> {
    let r = chi.modulus as f64;
    let mut sum = c(0.0, 0.0);
    let mut magnitude = 0.0;
    for (n, a) in f.coeffs.iter().enumerate().skip(1) {
        let b = 2.0 * PI * n as f64;
        let x = b / r;
        let v = chi.value(n as i64);
        if v != c(0.0, 0.0) && *a != c(0.0, 0.0) {
            let term = a * v * (-s * b.ln()).exp() * upper_incomplete_gamma(s, x)?.value;
            sum += term;
            magnitude += term.norm();
        }
        if x > s.norm() + 2.0 {
            let bound = f.growth.constant
                * (n as f64).powf(f.growth.exponent)
                * (-x + s.re.abs() * x.ln()).exp()
                * (-s.re * b.ln()).exp();
            if bound < 1e-20 * magnitude.max(1e-300) {
                return Ok(sum);
            }
        }
    }
    Err(Error::Budget {
        what: "twisted split integral (q-expansion too short)",
        attained: magnitude,
        tolerance: 0.0,
    })
}

/// Both sides of Weil's twisted functional equation for a level-one form.
///
/// The Dirichlet side must be taken where Σ a_n n^{−s} converges
/// absolutely; `n_terms` caps its length.
pub fn weil_twist_sides(
    f: &QExpansion,
    chi: &DirichletCharacter,
    s: ComplexPoint,
    n_terms: usize,
) -> Result<TwistSides> {
    let s = finite(s)?;
    let k = f
        .integer_weight()
        .filter(|_| f.period == 1.0 && f.is_cusp_form())
        .ok_or_else(|| {
            Error::domain("twists are checked for level-one cusp forms of integral weight")
        })?;
    if !chi.primitive {
        return Err(Error::domain("the twisting character must be primitive"));
    }
    let r = chi.modulus as f64;
    let n_max = n_terms.min(f.order());
    let series: ComplexPoint = (1..=n_max)
        .rev()
        .map(|n| f.coeffs[n] * chi.value(n as i64) * (-s * (n as f64).ln()).exp())
        .sum();
    let dirichlet = (-s * (2.0 * PI).ln() + log_gamma(s)?).exp() * series;
    let g = gauss_sum(chi);
    let root_number = c(0.0, 1.0).powi(k) * g * g;
    let reflected = c(k as f64, 0.0) - s;
    let i_chi = twisted_partial_integral(f, chi, s)?;
    let i_conj = twisted_partial_integral(f, &chi.conj(), reflected)?;
    let scale = ((c(k as f64 - 1.0, 0.0) - s * 2.0) * r.ln()).exp();
    Ok(TwistSides {
        dirichlet,
        split: i_chi + root_number * scale * i_conj,
        root_number,
    })
}

/// Residual of the twisted functional equation at one point as a report.
pub fn weil_twist_check(
    f: &QExpansion,
    chi: &DirichletCharacter,
    s: ComplexPoint,
    n_terms: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    let sides = weil_twist_sides(f, chi, s, n_terms)?;
    Ok(VerificationReport::single(
        "weil-twist",
        format!(
            "chi mod {} at s={s}, {n_terms} Dirichlet terms",
            chi.modulus
        ),
        tolerance,
        format!("r={} s={s}", chi.modulus),
        (sides.dirichlet - sides.split).norm(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirichlet::characters_mod;
    use crate::zeta_core::zeta;

    #[test]
    fn split_point_only_matters_for_non_modular_input() {
        let f = crate::modular_forms::delta_q_expansion(300).unwrap();
        let s = c(5.0, 2.0);
        let a = phi_completed(s, &f).unwrap().value;
        let b = phi_completed_split(12.0 - s, &f, 1.25).unwrap().value;
        assert!((a - b).norm() < 1e-15);
        // perturbing one coefficient breaks modularity and the reflected value
        let mut g = f.clone();
        g.coeffs[2] += 1.0;
        let a = phi_completed(s, &g).unwrap().value;
        let b = phi_completed_split(12.0 - s, &g, 1.25).unwrap().value;
        assert!((a - b).norm() > 1e-6);
        // while the symmetric split cannot tell
        let b = phi_completed(12.0 - s, &g).unwrap().value;
        assert!((a - b).norm() < 1e-15);
    }

    fn primitive(r: u64) -> DirichletCharacter {
        characters_mod(r)
            .unwrap()
            .into_iter()
            .find(|c| c.primitive && !c.is_trivial())
            .unwrap()
    }

    #[test]
    fn delta_functional_equation() {
        let d = delta_q_expansion(200).unwrap();
        let a = phi_completed(c(4.0, 3.0), &d).unwrap().value;
        let b = phi_completed(c(8.0, -3.0), &d).unwrap().value;
        assert!((a - b).norm() < 1e-10);
    }

    #[test]
    fn delta_dirichlet_side() {
        let d = delta_q_expansion(500).unwrap();
        let split = phi_completed(c(10.0, 0.0), &d).unwrap().value;
        let direct = phi_dirichlet(c(10.0, 0.0), &d, 500).unwrap();
        assert!((split - direct).norm() < 1e-9);
    }

    #[test]
    fn theta_gives_zeta_of_2s() {
        let th = theta_q_expansion(2000).unwrap();
        for s in [c(0.8, 0.0), c(1.5, 2.0), c(0.3, -4.0)] {
            let v = phi_completed(s, &th).unwrap().value;
            let expected = (-s * PI.ln() + log_gamma(s).unwrap()).exp() * zeta(s * 2.0).unwrap();
            assert!((v - expected).norm() < 1e-10, "{s}: {v} vs {expected}");
        }
    }

    #[test]
    fn delta_euler_product() {
        let desc = LSeriesDescriptor::delta(10_000).unwrap();
        let r = euler_product_check(&desc, c(3.0, 0.0), 10_000, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
        // X = 2: the single p = 2 factor against Σ_j a_{2^j} 2^{−js}
        let s = c(3.0, 0.0);
        let factor = 1.0 / (1.0 - desc.coeffs[2].re * 2f64.powf(-3.0) + 2f64.powf(-6.0));
        let powers: f64 = (0..=13)
            .map(|j| desc.coeffs[1 << j].re * 2f64.powf(-3.0 * j as f64))
            .sum();
        assert!((factor - powers).abs() < 1e-12);
        assert!(euler_product_gap(&desc, s, 2).unwrap() > 0.0);
    }

    #[test]
    fn tau_four_from_degree_two_factor() {
        let d = delta_q_expansion(4).unwrap();
        assert_eq!(d.coeffs[4].re, d.coeffs[2].re.powi(2) - 2048.0);
    }

    #[test]
    fn trivial_twist_is_hecke_equation() {
        let d = delta_q_expansion(20_000).unwrap();
        let trivial = &characters_mod(1).unwrap()[0];
        let sides = weil_twist_sides(&d, trivial, c(8.0, 0.0), 20_000).unwrap();
        assert!((sides.dirichlet - sides.split).norm() < 1e-9);
        let phi = phi_completed(c(8.0, 0.0), &d).unwrap().value;
        assert!((sides.split - phi).norm() < 1e-12);
    }

    #[test]
    fn twist_mod_four_and_three() {
        let d = delta_q_expansion(20_000).unwrap();
        let chi4 = primitive(4);
        let sides = weil_twist_sides(&d, &chi4, c(8.0, 0.0), 20_000).unwrap();
        assert!((sides.root_number - c(-4.0, 0.0)).norm() < 1e-12);
        assert!((sides.dirichlet - sides.split).norm() < 1e-6);
        let chi3 = primitive(3);
        let r = weil_twist_check(&d, &chi3, c(7.5, 0.0), 20_000, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn vertical_decay() {
        let d = delta_q_expansion(200).unwrap();
        let low = phi_completed(c(6.0, 5.0), &d).unwrap().value.norm();
        let high = phi_completed(c(6.0, 30.0), &d).unwrap().value.norm();
        assert!(low / high >= 1e3);
    }
}
