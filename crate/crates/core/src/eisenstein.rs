//! The real-analytic Eisenstein series
//! E(z, s) = ½ Σ_{gcd(c,d)=1} y^s / |cz + d|^{2s}
//! by lattice summation (Re s > 1) and by its Fourier expansion (all s).
//!
//! The Fourier expansion is the continuation mechanism here: each of its
//! terms is entire in s apart from 1/ξ(2s) and φ(s), so evaluating it off
//! Re s > 1 is simply evaluating the continuation.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{c, finite};
use crate::modular_forms::lattice::{exterior_integral, weighted_box_sum};
use crate::primes::{gcd, sigma_complex};
use crate::special_fn::{bessel_k, Estimate};
use crate::zeta_core::{scattering_ratio, xi, zeta};
use crate::{ComplexPoint, Error, Result};

/// Radius of the exclusion discs around s = 0, 1/2 and 1.
pub const EXCLUSION_RADIUS: f64 = 1e-3;
/// Lowest Im z accepted by the Fourier evaluator.
pub const MIN_FOURIER_Y: f64 = 0.3;
/// Lattice sums need Re s ≥ 1 + this.
pub const LATTICE_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UpperHalfPoint {
    pub x: f64,
    pub y: f64,
}

impl UpperHalfPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !x.is_finite() || !y.is_finite() || !(y > 0.0) {
            return Err(Error::domain(format!(
                "point must have finite x and y > 0, got ({x}, {y})"
            )));
        }
        Ok(Self { x, y })
    }

    pub fn from_complex(z: ComplexPoint) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn to_complex(self) -> ComplexPoint {
        c(self.x, self.y)
    }

    /// z ↦ −1/z
    pub fn inverted(self) -> Self {
        let w = -1.0 / self.to_complex();
        Self { x: w.re, y: w.im }
    }

    /// z ↦ z + 1
    pub fn shifted(self) -> Self {
        Self {
            x: self.x + 1.0,
            y: self.y,
        }
    }
}

impl std::fmt::Display for UpperHalfPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_complex())
    }
}

fn check_exceptional(s: ComplexPoint) -> Result<()> {
    for p in [0.0, 0.5, 1.0] {
        if (s - p).norm() < EXCLUSION_RADIUS {
            return Err(Error::Pole {
                function: "E(z,s)",
                at: s,
            });
        }
    }
    Ok(())
}

fn lattice_sum(z: ComplexPoint, s: ComplexPoint, r: i64) -> ComplexPoint {
    let body = weighted_box_sum(z, r, |w| (-s * w.norm_sqr().ln()).exp());
    // ∫_ρ^∞ r^{−2s} r dr = ρ^{2−2s}/(2s − 2)
    let tail = exterior_integral(z, r as f64, |_, rho| {
        ((1.0 - s) * 2.0 * rho.ln()).exp() / (s * 2.0 - 2.0)
    });
    body + tail
}

/// E(z, s) = (y^s / 2ζ(2s)) Σ'_{(m,n)} |mz + n|^{−2s} over the box
/// |m|, |n| ≤ R with trapezoid edges and a continuum exterior correction.
/// The error is the change from R/2 to R.
pub fn eisenstein_lattice(z: UpperHalfPoint, s: ComplexPoint, r: i64) -> Result<Estimate> {
    let s = finite(s)?;
    if s.re < 1.0 + LATTICE_MARGIN {
        return Err(Error::domain(format!(
            "lattice sum needs Re s >= {}, got {s}",
            1.0 + LATTICE_MARGIN
        )));
    }
    if r < 2 {
        return Err(Error::domain("lattice sum needs R >= 2"));
    }
    let w = z.to_complex();
    let scale = (s * z.y.ln()).exp() / (zeta(s * 2.0)? * 2.0);
    let full = lattice_sum(w, s, r) * scale;
    let half = lattice_sum(w, s, r / 2) * scale;
    Ok(Estimate::new(finite(full)?, (full - half).norm()))
}

/// ½ Σ_{gcd(c,d)=1, |c|,|d| ≤ R} y^s |cz + d|^{−2s}, the coprime form of
/// the definition, with no tail correction. The error is the continuum
/// estimate of the omitted part.
pub fn eisenstein_coprime(z: UpperHalfPoint, s: ComplexPoint, r: i64) -> Result<Estimate> {
    let s = finite(s)?;
    if s.re < 1.0 + LATTICE_MARGIN || r < 2 {
        return Err(Error::domain("coprime sum needs Re s > 1 and R >= 2"));
    }
    let w = z.to_complex();
    let rows: Vec<ComplexPoint> = (-r..=r)
        .into_par_iter()
        .map(|m| {
            let mut row = c(0.0, 0.0);
            for n in -r..=r {
                if gcd(m.unsigned_abs(), n.unsigned_abs()) == 1 {
                    row += (-s * (w * m as f64 + n as f64).norm_sqr().ln()).exp();
                }
            }
            row
        })
        .collect();
    let y_s = (s * z.y.ln()).exp();
    let sum: ComplexPoint = rows.iter().sum();
    let rho = r as f64 * z.y.min(1.0) / (1.0 + z.x.abs());
    let tail = (6.0 / (PI * PI)) * PI * rho.powf(2.0 - 2.0 * s.re) / ((s.re - 1.0) * z.y);
    Ok(Estimate::new(sum * y_s * 0.5, 0.5 * y_s.norm() * tail))
}

/// φ(s) = ξ(2s − 1)/ξ(2s).
pub fn scattering_phi(s: ComplexPoint) -> Result<ComplexPoint> {
    let s = finite(s)?;
    check_exceptional(s)?;
    scattering_ratio(s * 2.0 - 1.0)
}

/// Constant term a_0(y, s) = y^s + φ(s) y^{1−s}.
pub fn constant_term(y: f64, s: ComplexPoint) -> Result<ComplexPoint> {
    let ln_y = y.ln();
    Ok((s * ln_y).exp() + scattering_phi(s)? * ((1.0 - s) * ln_y).exp())
}

/// The n-th Fourier coefficient without its e^{2πinx}:
/// 2√y K_{s−1/2}(2π|n|y) |n|^{s−1/2} σ_{1−2s}(|n|) / ξ(2s).
pub fn fourier_coefficient(
    n: u64,
    y: f64,
    s: ComplexPoint,
    xi_2s: ComplexPoint,
) -> Result<Estimate> {
    let nf = n as f64;
    let k = bessel_k(s - 0.5, 2.0 * PI * nf * y)?;
    let arith = ((s - 0.5) * nf.ln()).exp() * sigma_complex(n, 1.0 - s * 2.0);
    let factor = arith * (2.0 * y.sqrt()) / xi_2s;
    Ok(Estimate::new(k.value * factor, k.error * factor.norm()))
}

/// Number of modes after which K_{s−1/2}(2πny) is below e^{−45} relative
/// to its size at the turning point.
pub fn default_modes(z: UpperHalfPoint, s: ComplexPoint) -> usize {
    ((s.norm() + 45.0) / (2.0 * PI * z.y)).ceil() as usize
}

/// E(z, s) from its Fourier expansion with modes 0 < |n| ≤ M.
pub fn eisenstein_fourier(z: UpperHalfPoint, s: ComplexPoint, m: usize) -> Result<Estimate> {
    let s = finite(s)?;
    check_exceptional(s)?;
    if z.y < MIN_FOURIER_Y {
        return Err(Error::domain(format!(
            "Fourier evaluation needs y >= {MIN_FOURIER_Y}, got {}",
            z.y
        )));
    }
    let xi_2s = xi(s * 2.0)?.value;
    let a0 = constant_term(z.y, s)?;
    let modes: Vec<Estimate> = (1..=m.max(1) as u64)
        .into_par_iter()
        .map(|n| {
            let a = fourier_coefficient(n, z.y, s, xi_2s)?;
            // a_n = a_{−n}, so the pair contributes 2 a_n cos(2πnx)
            let w = 2.0 * (2.0 * PI * n as f64 * z.x).cos();
            Ok(Estimate::new(a.value * w, a.error * w.abs()))
        })
        .collect::<Result<_>>()?;
    let value = modes.iter().fold(a0, |acc, e| acc + e.value);
    let last = modes.last().map_or(0.0, |e| e.value.norm());
    let ratio = (-2.0 * PI * z.y).exp();
    let error = modes.iter().map(|e| e.error).sum::<f64>()
        + last * ratio / (1.0 - ratio)
        + 1e-15 * a0.norm();
    Ok(Estimate::new(finite(value)?, error))
}

/// E(z, s) by the Fourier route with [`default_modes`].
pub fn eisenstein(z: UpperHalfPoint, s: ComplexPoint) -> Result<Estimate> {
    eisenstein_fourier(z, s, default_modes(z, s).max(default_modes(z, 1.0 - s)))
}

/// |E(z, s) − φ(s) E(z, 1 − s)|, both sides by the Fourier route.
pub fn verify_eis_fe(z: UpperHalfPoint, s: ComplexPoint) -> Result<f64> {
    let lhs = eisenstein(z, s)?.value;
    let rhs = scattering_phi(s)? * eisenstein(z, 1.0 - s)?.value;
    Ok((lhs - rhs).norm())
}

/// Reference height for the first-coefficient identity.
const A1_REFERENCE_Y: f64 = 1.0;

/// ζ's functional equation re-derived from a_1(y, s) = φ(s) a_1(y, 1 − s).
///
/// With s = (1 + s')/2, a_1(y, s) = 2√y K_{s'/2}(2πy)/ξ(1 + s') and
/// a_1(y, 1−s) = 2√y K_{−s'/2}(2πy)/ξ(1 − s'). The difference of the two
/// sides, rescaled by ξ(1+s')ξ(1−s')/(2√y K_{s'/2}(2πy)), is
/// ξ(1 − s') − ξ(s'); its modulus is returned. Both Bessel orders are
/// evaluated separately.
pub fn zeta_fe_from_a1(s_prime: ComplexPoint) -> Result<f64> {
    let sp = finite(s_prime)?;
    if (sp - 1.0).norm() < 2.0 * EXCLUSION_RADIUS || sp.norm() < 2.0 * EXCLUSION_RADIUS {
        return Err(Error::Pole {
            function: "xi",
            at: sp,
        });
    }
    let s = (sp + 1.0) * 0.5;
    let y = A1_REFERENCE_Y;
    let a1 = |s: ComplexPoint| -> Result<ComplexPoint> {
        Ok(fourier_coefficient(1, y, s, xi(s * 2.0)?.value)?.value)
    };
    let phi = scattering_ratio(sp)?;
    let gap = a1(s)? - phi * a1(1.0 - s)?;
    let rescale = xi(1.0 + sp)?.value * xi(1.0 - sp)?.value
        / (bessel_k(sp * 0.5, 2.0 * PI * y)?.value * (2.0 * y.sqrt()));
    Ok((gap * rescale).norm())
}

/// |−y²(f_xx + f_yy) − λ f| at z by the five-point stencil with step h.
fn stencil_residual<F>(f: F, z: UpperHalfPoint, eigenvalue: ComplexPoint, h: f64) -> Result<f64>
where
    F: Fn(UpperHalfPoint) -> Result<ComplexPoint>,
{
    if !(h > 0.0) || h >= z.y {
        return Err(Error::domain(
            "stencil step must be positive and keep y > 0",
        ));
    }
    let at = |dx: f64, dy: f64| {
        f(UpperHalfPoint {
            x: z.x + dx,
            y: z.y + dy,
        })
    };
    let centre = at(0.0, 0.0)?;
    let lap = (at(h, 0.0)? + at(-h, 0.0)? + at(0.0, h)? + at(0.0, -h)? - centre * 4.0) / (h * h);
    Ok((-lap * z.y * z.y - eigenvalue * centre).norm())
}

/// Finite-difference check that E(·, s) has Laplace eigenvalue s(1 − s).
pub fn laplacian_check(z: UpperHalfPoint, s: ComplexPoint, h: f64) -> Result<f64> {
    if !(1e-4..=1e-2).contains(&h) {
        return Err(Error::domain(format!(
            "stencil step must lie in [1e-4, 1e-2], got {h}"
        )));
    }
    let modes = default_modes(UpperHalfPoint { y: z.y - h, ..z }, s);
    stencil_residual(
        |w| Ok(eisenstein_fourier(w, s, modes)?.value),
        z,
        s * (1.0 - s),
        h,
    )
}

/// Observed order of the stencil error, log(r(h₁)/r(h₂))/log(h₁/h₂) with
/// h₁ = 1e−2 and h₂ = 5e−3.
pub fn laplacian_slope(z: UpperHalfPoint, s: ComplexPoint) -> Result<f64> {
    let (h1, h2) = (1e-2, 5e-3);
    let r1 = laplacian_check(z, s, h1)?;
    let r2 = laplacian_check(z, s, h2)?;
    Ok((r1 / r2).ln() / (h1 / h2).ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64) -> UpperHalfPoint {
        UpperHalfPoint::new(x, y).unwrap()
    }

    #[test]
    fn lattice_matches_fourier_at_i() {
        let z = pt(0.0, 1.0);
        let s = c(3.0, 0.0);
        let l = eisenstein_lattice(z, s, 400).unwrap();
        let f = eisenstein_fourier(z, s, 15).unwrap();
        assert!(
            (l.value - f.value).norm() < 1e-8,
            "{} vs {}",
            l.value,
            f.value
        );
    }

    #[test]
    fn lattice_matches_fourier_at_2i() {
        let z = pt(0.0, 2.0);
        let s = c(3.0, 0.0);
        let l = eisenstein_lattice(z, s, 400).unwrap();
        let f = eisenstein_fourier(z, s, 15).unwrap();
        assert!((l.value - f.value).norm() < 1e-9);
    }

    #[test]
    fn lattice_invariance() {
        let z = pt(0.3, 1.2);
        let s = c(2.5, 0.0);
        let e = eisenstein_lattice(z, s, 400).unwrap().value;
        assert!((e - eisenstein_lattice(z.shifted(), s, 400).unwrap().value).norm() < 1e-8);
        assert!((e - eisenstein_lattice(z.inverted(), s, 400).unwrap().value).norm() < 1e-8);
    }

    #[test]
    fn coprime_normalization() {
        let z = pt(0.1, 1.1);
        let s = c(4.0, 0.0);
        let a = eisenstein_coprime(z, s, 150).unwrap();
        let b = eisenstein_lattice(z, s, 150).unwrap();
        assert!(a.error < 1e-9);
        assert!((a.value - b.value).norm() < 1e-9);
    }

    #[test]
    fn phi_identities() {
        let s = c(0.7, 2.0);
        let prod = scattering_phi(s).unwrap() * scattering_phi(1.0 - s).unwrap();
        assert!((prod - 1.0).norm() < 1e-12);
        // √π Γ(3/2) ζ(3) / (Γ(2) ζ(4)) = (π/2) ζ(3)/ζ(4)
        let zeta3 = 1.202_056_903_159_594_3;
        let zeta4 = PI.powi(4) / 90.0;
        let cross = PI / 2.0 * zeta3 / zeta4;
        assert!((scattering_phi(c(2.0, 0.0)).unwrap().re - cross).abs() < 1e-13);
        assert!((scattering_phi(c(0.5, 5.0)).unwrap().norm() - 1.0).abs() < 1e-12);
        // |φ(3/4 + it)| is not below 1 at t = 1. At t = 10 the ξ-route loses
        // about e^{5π}·1e−17 relative accuracy to cancellation.
        for (t, modulus) in [
            (1.0, 1.184_463_504_589_51),
            (5.0, 0.958_497_974_712_124),
            (10.0, 0.675_418_653_323_306),
        ] {
            assert!((scattering_phi(c(0.75, t)).unwrap().norm() - modulus).abs() < 1e-10);
        }
        assert!(scattering_phi(c(0.5, 0.0)).is_err());
    }

    #[test]
    fn functional_equation() {
        for (z, s) in [
            (pt(0.0, 1.0), c(0.5, 3.0)),
            (pt(0.25, 0.8), c(2.0, 0.0)),
            (pt(0.3, 1.2), c(0.25, 0.0)),
        ] {
            assert!(verify_eis_fe(z, s).unwrap() < 1e-9, "{z} {s}");
        }
        assert!(verify_eis_fe(pt(0.0, 1.0), c(0.5, 0.0)).is_err());
    }

    #[test]
    fn x_average_is_constant_term() {
        let y = 1.5;
        let s = c(2.0, 1.0);
        let rule = crate::quad::gauss_legendre(32);
        let avg = rule.integrate(|x| eisenstein(pt(x, y), s).unwrap().value, 0.0, 1.0);
        assert!((avg - constant_term(y, s).unwrap()).norm() < 1e-7);
    }

    #[test]
    fn zeta_fe_via_first_coefficient() {
        assert!(zeta_fe_from_a1(c(0.4, 6.0)).unwrap() < 1e-9);
        assert!(zeta_fe_from_a1(c(0.5, 0.0)).unwrap() < 1e-15);
    }

    #[test]
    fn laplacian() {
        // At z = i, s = 2 the stencil's own h² term is about 15h², so the
        // residual at h = 1e-3 is 1.5e-5 and scales exactly like h².
        let fine = laplacian_check(pt(0.0, 1.0), c(2.0, 0.0), 1e-3).unwrap();
        let coarse = laplacian_check(pt(0.0, 1.0), c(2.0, 0.0), 1e-2).unwrap();
        assert!((fine - coarse / 100.0).abs() < 1e-3 * fine);
        assert!(laplacian_check(pt(0.0, 1.0), c(0.5, 4.0), 1e-3).unwrap() < 1e-4);
        let slope = laplacian_slope(pt(0.1, 1.1), c(2.0, 0.5)).unwrap();
        assert!((1.8..=2.2).contains(&slope), "{slope}");
    }

    #[test]
    fn stencil_kills_constants() {
        let r = stencil_residual(|_| Ok(c(3.0, 0.0)), pt(0.0, 1.0), c(0.0, 0.0), 1e-3).unwrap();
        assert_eq!(r, 0.0);
    }

    #[test]
    fn rejects_low_points_and_small_re_s() {
        assert!(eisenstein_fourier(pt(0.0, 0.2), c(2.0, 0.0), 10).is_err());
        assert!(eisenstein_lattice(pt(0.0, 1.0), c(1.01, 0.0), 10).is_err());
        assert!(UpperHalfPoint::new(0.0, -1.0).is_err());
    }
}
