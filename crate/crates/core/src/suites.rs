//! Named verification suites. Each suite evaluates one family of
//! identities on a fixed grid and returns one [`VerificationReport`] per
//! check, in a fixed order.
//!
//! A grid point whose evaluation fails contributes an infinite residual,
//! with the error message attached to its input label, so the report fails
//! instead of the whole suite aborting.

use std::f64::consts::PI;
use std::time::Instant;

use rayon::prelude::*;

use crate::complex::c;
use crate::diophantine::{gauss_condition, three_squares_solutions};
use crate::dirichlet::characters_mod;
use crate::eisenstein::{
    eisenstein, eisenstein_lattice, laplacian_slope, verify_eis_fe, zeta_fe_from_a1, UpperHalfPoint,
};
use crate::hecke_l::{phi_completed, phi_completed_split, weil_twist_sides, LSeriesDescriptor};
use crate::langlands::{
    deligne_check, sarnak_integrality_test, sato_tate_report, semicircle_moment, PrimeCoefficients,
};
use crate::mellin_converse::{reconstruct, reconstruct_shifted, ContourSpec};
use crate::modular_forms::{delta_q_expansion, evaluate, tau_coefficients};
use crate::primes::{gcd, primes_up_to};
use crate::special_fn::theta_direct;
use crate::tate_local::{archimedean_factor, local_factor_p};
use crate::zeta_core::{convexity_probe, xi, xi_split, zeta};
use crate::{ComplexPoint, Error, Result, VerificationReport};

/// The reflected side of each functional equation is evaluated with the
/// Mellin integral split at this point, so the two sides share no terms.
pub const REFLECTED_SPLIT: f64 = 1.25;

/// Suite names in the order `verify all` runs them.
pub const SUITES: &[&str] = &[
    "zeta-fe",
    "jacobi",
    "zeta-values",
    "hecke-fe",
    "weil-twist",
    "mellin",
    "eisenstein",
    "laplacian",
    "exact-arithmetic",
    "tate-local",
    "sato-tate",
    "three-squares",
    "convexity",
];

/// Overrides accepted by the suites. `None` means the suite's default.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SuiteParams {
    /// Replaces the tolerance of every report the suite produces.
    pub tol: Option<f64>,
    pub t_max: Option<f64>,
    pub terms: Option<usize>,
    pub x: Option<u64>,
    pub m_max: Option<u32>,
    pub bins: Option<usize>,
    /// Record wall-clock time in `runtime_ms`; off by default so output is
    /// byte-stable.
    pub timing: bool,
}

pub fn run_suite(name: &str, params: &SuiteParams) -> Result<Vec<VerificationReport>> {
    let start = Instant::now();
    let reports = match name {
        "zeta-fe" => vec![zeta_fe(params.t_max.unwrap_or(30.0))?],
        "jacobi" => vec![jacobi()],
        "zeta-values" => zeta_values(),
        "hecke-fe" => vec![hecke_fe(
            params.t_max.unwrap_or(20.0),
            params.terms.unwrap_or(400),
        )?],
        "weil-twist" => vec![weil_twist(params.terms.unwrap_or(100_000))?],
        "mellin" => mellin(params.t_max)?,
        "eisenstein" => eisenstein_suite()?,
        "laplacian" => vec![laplacian()?],
        "exact-arithmetic" => exact_arithmetic(params.x.unwrap_or(10_000))?,
        "tate-local" => tate_local(),
        "sato-tate" => sato_tate(
            params.x.unwrap_or(100_000),
            params.m_max.unwrap_or(4),
            params.bins.unwrap_or(40),
        )?,
        "three-squares" => vec![three_squares(params.x.unwrap_or(10_000))],
        "convexity" => {
            let t_max = params.t_max.unwrap_or(100.0);
            convexity_probe(t_max, 0.1)?.reports(t_max).to_vec()
        }
        other => {
            return Err(Error::Unknown {
                kind: "suite",
                name: other.to_string(),
            })
        }
    };
    let elapsed = if params.timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(reports
        .into_iter()
        .map(|r| {
            let r = r.with_runtime_ms(elapsed);
            match params.tol {
                Some(tol) => r.with_tolerance(tol),
                None => r,
            }
        })
        .collect())
}

/// Every suite in [`SUITES`] order.
pub fn run_all(params: &SuiteParams) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    for name in SUITES {
        out.extend(run_suite(name, params)?);
    }
    Ok(out)
}

fn labelled(input: String, value: Result<f64>) -> (String, f64) {
    match value {
        Ok(r) => (input, r),
        Err(e) => (format!("{input}: {e}"), f64::INFINITY),
    }
}

fn grid_residuals<T, F>(
    points: Vec<T>,
    label: impl Fn(&T) -> String + Sync,
    f: F,
) -> Vec<(String, f64)>
where
    T: Send + Sync,
    F: Fn(&T) -> Result<f64> + Sync,
{
    points
        .par_iter()
        .map(|p| labelled(label(p), f(p)))
        .collect()
}

fn fmt_s(s: &ComplexPoint) -> String {
    format!("s={s}")
}

fn zeta_fe(t_max: f64) -> Result<VerificationReport> {
    if !(t_max >= 0.0) {
        return Err(Error::domain("t_max must be non-negative"));
    }
    let steps = (t_max / 0.5).floor() as usize;
    let mut points = Vec::new();
    for i in 0..=20 {
        for j in 0..=steps {
            let s = c(-2.0 + 0.25 * i as f64, 0.5 * j as f64);
            if s != c(0.0, 0.0) && s != c(1.0, 0.0) {
                points.push(s);
            }
        }
    }
    let n = points.len();
    let residuals = grid_residuals(points, fmt_s, |&s| {
        Ok((xi(s)?.value - xi_split(1.0 - s, REFLECTED_SPLIT)?.value).norm())
    });
    Ok(VerificationReport::from_residuals(
        "zeta-fe",
        format!("|xi(s) - xi(1-s)| (reflected side split at y = {REFLECTED_SPLIT}), sigma in [-2,3] step 0.25, t in [0,{t_max}] step 0.5, poles excluded ({n} points)"),
        1e-10,
        residuals,
    ))
}

fn jacobi() -> VerificationReport {
    let points: Vec<f64> = (0..60)
        .map(|i| (0.05f64.ln() + (400f64).ln() * i as f64 / 59.0).exp())
        .collect();
    let residuals = grid_residuals(
        points,
        |t| format!("t={t}"),
        |&t| Ok((theta_direct(t)? - theta_direct(1.0 / t)? / t.sqrt()).abs()),
    );
    VerificationReport::from_residuals(
        "jacobi",
        "|theta(t) - t^{-1/2} theta(1/t)| by direct summation, 60 log-spaced t in [0.05, 20]",
        1e-12,
        residuals,
    )
}

fn zeta_values() -> Vec<VerificationReport> {
    let two = labelled(
        "s=2".into(),
        zeta(c(2.0, 0.0)).map(|z| (z - PI * PI / 6.0).norm()),
    );
    let minus_one = labelled(
        "s=-1".into(),
        zeta(c(-1.0, 0.0)).map(|z| (z + 1.0 / 12.0).norm()),
    );
    vec![
        VerificationReport::from_residuals("zeta-two", "|zeta(2) - pi^2/6|", 1e-12, [two]),
        VerificationReport::from_residuals(
            "zeta-minus-one",
            "|zeta(-1) + 1/12|",
            1e-11,
            [minus_one],
        ),
    ]
}

fn hecke_fe(t_max: f64, terms: usize) -> Result<VerificationReport> {
    let f = delta_q_expansion(terms)?;
    let steps = t_max.floor() as i64;
    let mut points = Vec::new();
    for i in 0..=12 {
        for t in -steps..=steps {
            points.push(c(3.0 + 0.5 * i as f64, t as f64));
        }
    }
    let n = points.len();
    let residuals = grid_residuals(points, fmt_s, |&s| {
        Ok((phi_completed(s, &f)?.value
            - phi_completed_split(12.0 - s, &f, REFLECTED_SPLIT)?.value)
            .norm())
    });
    Ok(VerificationReport::from_residuals(
        "hecke-fe",
        format!("|Phi(s) - Phi(12-s)| for Delta (reflected side split at y = {REFLECTED_SPLIT}), sigma in [3,9] step 0.5, |t| <= {t_max} step 1 ({n} points)"),
        1e-9,
        residuals,
    ))
}

fn weil_twist(terms: usize) -> Result<VerificationReport> {
    let f = delta_q_expansion(terms)?;
    let points = [c(7.5, 1.0), c(8.0, -2.0), c(9.0, 3.0)];
    let mut cases = Vec::new();
    for r in [3u64, 4, 5, 7] {
        for (idx, chi) in characters_mod(r)?
            .into_iter()
            .enumerate()
            .filter(|(_, chi)| chi.primitive)
        {
            for s in points {
                cases.push((r, idx, chi.clone(), s));
            }
        }
    }
    let residuals = grid_residuals(
        cases,
        |(r, idx, _, s)| format!("chi#{idx} mod {r}, s={s}"),
        |(_, _, chi, s)| {
            let sides = weil_twist_sides(&f, chi, *s, terms)?;
            Ok((sides.dirichlet - sides.split).norm())
        },
    );
    Ok(VerificationReport::from_residuals(
        "weil-twist",
        format!("Lambda(s, Delta x chi) vs its twisted functional equation, all primitive chi mod 3, 4, 5, 7, s in {{7.5+i, 8-2i, 9+3i}}, {terms} terms"),
        1e-6,
        residuals,
    ))
}

fn mellin(t_override: Option<f64>) -> Result<Vec<VerificationReport>> {
    let theta_desc = LSeriesDescriptor::theta(4000)?;
    let delta_desc = LSeriesDescriptor::delta(400)?;
    let theta_spec = ContourSpec::new(2.0, t_override.unwrap_or(40.0), 8)?;
    let delta_spec = ContourSpec::new(8.0, t_override.unwrap_or(60.0), 8)?;
    let xs = vec![0.7, 1.0, 1.3, 2.0, 3.0];
    let theta = grid_residuals(
        xs.clone(),
        |x| format!("x={x}"),
        |&x| {
            Ok((reconstruct(&theta_desc, x, &theta_spec)?.value
                - c(crate::special_fn::theta(x)?, 0.0))
            .norm())
        },
    );
    let delta_xs = vec![0.8, 1.0, 1.25, 1.5, 2.0];
    let delta = grid_residuals(
        delta_xs,
        |x| format!("x={x}"),
        |&x| {
            let direct = evaluate(&delta_desc.form, c(0.0, x))?.value;
            Ok((reconstruct(&delta_desc, x, &delta_spec)?.value - direct).norm())
        },
    );
    let shift = grid_residuals(
        xs,
        |x| format!("x={x}"),
        |&x| {
            Ok((reconstruct(&theta_desc, x, &theta_spec)?.value
                - reconstruct_shifted(&theta_desc, x, &theta_spec)?.value)
                .norm())
        },
    );
    let t_theta = theta_spec.t_cut;
    let t_delta = delta_spec.t_cut;
    Ok(vec![
        VerificationReport::from_residuals(
            "mellin-theta",
            format!("theta(ix) from Phi on Re s = 2, |t| <= {t_theta}, vs direct summation"),
            1e-6,
            theta,
        ),
        VerificationReport::from_residuals(
            "mellin-delta",
            format!("Delta(ix) from Phi on Re s = 8, |t| <= {t_delta}, vs q-expansion"),
            1e-6,
            delta,
        ),
        VerificationReport::from_residuals(
            "mellin-shift",
            "theta: Re s = 2 vs Re s = -3/2 plus residues",
            1e-6,
            shift,
        ),
    ])
}

fn eisenstein_suite() -> Result<Vec<VerificationReport>> {
    let zs = [
        UpperHalfPoint::new(0.0, 1.0)?,
        UpperHalfPoint::new(0.3, 1.2)?,
        UpperHalfPoint::new(0.0, 2.0)?,
    ];
    let ss = [c(0.25, 0.0), c(0.5, 3.0), c(2.0, 0.0), c(1.7, -2.0)];
    let fe_points: Vec<_> = ss
        .iter()
        .flat_map(|&s| zs.iter().map(move |&z| (z, s)))
        .collect();
    let fe = grid_residuals(
        fe_points,
        |(z, s)| format!("z={z} s={s}"),
        |&(z, s)| verify_eis_fe(z, s),
    );

    let lattice_points: Vec<_> = [2.5, 3.0, 4.0]
        .iter()
        .flat_map(|&re| {
            [
                (zs[0], 0.0),
                (zs[1], 1.0),
                (UpperHalfPoint { x: -0.2, y: 0.9 }, -2.0),
            ]
            .into_iter()
            .map(move |(z, im)| (z, c(re, im)))
        })
        .collect();
    let lattice = grid_residuals(
        lattice_points,
        |(z, s)| format!("z={z} s={s}"),
        |&(z, s)| Ok((eisenstein_lattice(z, s, 400)?.value - eisenstein(z, s)?.value).norm()),
    );

    let a1_points = vec![
        c(0.4, 6.0),
        c(0.2, 1.0),
        c(-1.5, 3.0),
        c(2.5, -4.0),
        c(0.7, 10.0),
        c(0.1, 14.1),
        c(3.0, 0.0),
        c(-0.3, -7.0),
        c(0.5, 20.0),
        c(1.5, 12.0),
    ];
    let a1 = grid_residuals(a1_points, |s| format!("s'={s}"), |&s| zeta_fe_from_a1(s));
    Ok(vec![
        VerificationReport::from_residuals(
            "eisenstein-fe",
            "|E(z,s) - phi(s)E(z,1-s)|, s in {0.25, 0.5+3i, 2, 1.7-2i}, z in {i, 0.3+1.2i, 2i}",
            1e-8,
            fe,
        ),
        VerificationReport::from_residuals(
            "eisenstein-lattice",
            "lattice sum (R = 400) vs Fourier expansion, Re s in {2.5, 3, 4}",
            1e-8,
            lattice,
        ),
        VerificationReport::from_residuals(
            "zeta-fe-via-a1",
            "|xi(1-s') - xi(s')| from a_1(y,s) = phi(s)a_1(y,1-s), y = 1",
            1e-9,
            a1,
        ),
    ])
}

fn laplacian() -> Result<VerificationReport> {
    let points = vec![
        (UpperHalfPoint::new(0.0, 1.0)?, c(2.0, 0.0)),
        (UpperHalfPoint::new(0.3, 1.2)?, c(0.5, 4.0)),
        (UpperHalfPoint::new(0.0, 2.0)?, c(3.0, 1.0)),
    ];
    let residuals = grid_residuals(
        points,
        |(z, s)| format!("z={z} s={s}"),
        |&(z, s)| Ok((laplacian_slope(z, s)? - 2.0).abs()),
    );
    Ok(VerificationReport::from_residuals(
        "laplacian-order",
        "|slope - 2| of the five-point eigenvalue residual between h = 1e-2 and 5e-3",
        0.2,
        residuals,
    ))
}

fn exact_arithmetic(deligne_x: u64) -> Result<Vec<VerificationReport>> {
    let tau = tau_coefficients(300 * 300)?;
    let pairs: Vec<(usize, usize)> = (1..=300usize)
        .flat_map(|m| (m..=300usize).map(move |n| (m, n)))
        .filter(|&(m, n)| gcd(m as u64, n as u64) == 1)
        .collect();
    let count = pairs.len();
    let mult: Vec<(String, f64)> = pairs
        .par_iter()
        .map(|&(m, n)| {
            let diff = tau[m * n] - tau[m] * tau[n];
            (format!("m={m} n={n}"), diff.unsigned_abs() as f64)
        })
        .collect();
    let squares: Vec<(String, f64)> = primes_up_to(100)?
        .iter()
        .map(|&p| {
            let p = p as usize;
            let diff = tau[p * p] - (tau[p] * tau[p] - (p as i128).pow(11));
            (format!("p={p}"), diff.unsigned_abs() as f64)
        })
        .collect();
    Ok(vec![
        VerificationReport::from_residuals(
            "tau-multiplicative",
            format!("tau(mn) = tau(m)tau(n), coprime m <= n <= 300 ({count} pairs), exact"),
            0.0,
            mult,
        ),
        VerificationReport::from_residuals(
            "tau-prime-square",
            "tau(p^2) = tau(p)^2 - p^11, p <= 100, exact",
            0.0,
            squares,
        ),
        deligne_check(deligne_x)?,
    ])
}

fn tate_local() -> Vec<VerificationReport> {
    let ss = [
        c(0.5, 0.0),
        c(0.75, 3.0),
        c(1.0, 0.0),
        c(2.0, -5.0),
        c(3.5, 14.0),
    ];
    let primes = primes_up_to(100).map(|p| p.to_vec()).unwrap_or_default();
    let points: Vec<(u64, ComplexPoint)> = primes
        .iter()
        .flat_map(|&p| ss.iter().map(move |&s| (p, s)))
        .collect();
    let padic = grid_residuals(
        points,
        |(p, s)| format!("p={p} s={s}"),
        |&(p, s)| {
            let (series, closed) = local_factor_p(p, s, 400)?;
            Ok((series - closed).norm())
        },
    );
    let arch_points: Vec<ComplexPoint> = (0..10)
        .map(|i| c(0.3 + 0.55 * i as f64, 1.5 * i as f64 - 4.0))
        .collect();
    let arch = grid_residuals(arch_points, fmt_s, |&s| {
        let (quad, closed) = archimedean_factor(s)?;
        Ok((quad - closed).norm())
    });
    vec![
        VerificationReport::from_residuals(
            "tate-padic",
            "geometric series vs (1 - p^{-s})^{-1}, p <= 100, Re s >= 0.5",
            1e-12,
            padic,
        ),
        VerificationReport::from_residuals(
            "tate-archimedean",
            "quadrature of e^{-pi x^2}|x|^s d*x vs pi^{-s/2} Gamma(s/2), 10 points",
            1e-9,
            arch,
        ),
    ]
}

fn catalan(k: u64) -> f64 {
    // C_k = binom(2k, k)/(k + 1)
    let mut b: u64 = 1;
    for i in 0..k {
        b = b * (2 * k - i) / (i + 1);
    }
    (b / (k + 1)) as f64
}

fn sato_tate(x: u64, m_max: u32, bins: usize) -> Result<Vec<VerificationReport>> {
    let coeffs = PrimeCoefficients::delta(x)?;
    let st = sato_tate_report(&coeffs, x, m_max, bins)?;
    let even: Vec<(String, f64)> = (0..=4u64)
        .map(|k| {
            labelled(
                format!("m={}", 2 * k),
                semicircle_moment(2 * k as u32).map(|v| (v - catalan(k)).abs()),
            )
        })
        .collect();
    let odd: Vec<(String, f64)> = (0..5u32)
        .map(|k| {
            labelled(
                format!("m={}", 2 * k + 1),
                semicircle_moment(2 * k + 1).map(f64::abs),
            )
        })
        .collect();
    // a_p = 1 + χ_{−4}(p): the integral coefficients of ζ(s)L(s, χ_{−4})
    let primes = primes_up_to(x)?;
    let integral_ap: Vec<i64> = primes
        .iter()
        .map(|&p| {
            if p == 2 {
                1
            } else if p % 4 == 1 {
                2
            } else {
                0
            }
        })
        .collect();
    let sarnak = sarnak_integrality_test(primes, &integral_ap, x)?;
    let mut out = st.reports;
    out.push(VerificationReport::from_residuals(
        "semicircle-catalan",
        "even semicircle moments M_2k vs Catalan numbers, k <= 4",
        1e-10,
        even,
    ));
    out.push(VerificationReport::from_residuals(
        "semicircle-odd",
        "odd semicircle moments, m <= 9",
        1e-12,
        odd,
    ));
    out.push(sarnak.report);
    Ok(out)
}

fn three_squares(n_max: u64) -> VerificationReport {
    let residuals: Vec<(String, f64)> = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let found = three_squares_solutions(n).map(|v| !v.is_empty());
            labelled(
                format!("n={n}"),
                found.map(|f| if f == gauss_condition(n) { 0.0 } else { 1.0 }),
            )
        })
        .collect();
    VerificationReport::from_residuals(
        "three-squares",
        format!("enumeration non-empty iff n is not 4^a(8b+7), n <= {n_max}"),
        0.0,
        residuals,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_numbers() {
        let v: Vec<f64> = (0..5).map(catalan).collect();
        assert_eq!(v, vec![1.0, 1.0, 2.0, 5.0, 14.0]);
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(
            run_suite("nope", &SuiteParams::default()),
            Err(Error::Unknown { .. })
        ));
    }

    #[test]
    fn tolerance_override_fails_a_passing_suite() {
        let ok = run_suite("jacobi", &SuiteParams::default()).unwrap();
        assert!(ok[0].pass && ok[0].runtime_ms == 0);
        let strict = SuiteParams {
            tol: Some(-1.0),
            ..Default::default()
        };
        assert!(!run_suite("jacobi", &strict).unwrap()[0].pass);
    }

    #[test]
    fn zeta_fe_grid_size() {
        let r = run_suite(
            "zeta-fe",
            &SuiteParams {
                t_max: Some(1.0),
                ..Default::default()
            },
        )
        .unwrap();
        // 21 sigmas × 3 heights minus the two poles
        assert!(r[0].grid_description.contains("(61 points)"));
        assert!(r[0].pass);
    }
}
