//! Gauss-Legendre quadrature: fixed rules, composite panels, and a globally
//! adaptive driver that bisects the worst interval first.

use std::collections::{BinaryHeap, HashMap};
use std::f64::consts::PI;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use crate::{Error, Result};

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    fn compute(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    /// Integrates `f` over [a, b].
    pub fn integrate<F: FnMut(f64) -> Complex64>(&self, mut f: F, a: f64, b: f64) -> Complex64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += f(mid + half * x) * *w;
        }
        acc * half
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Cached n-point rule.
pub fn gauss_legendre(n: usize) -> &'static GaussLegendre {
    static CACHE: OnceLock<Mutex<HashMap<usize, &'static GaussLegendre>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("quadrature cache poisoned");
    guard
        .entry(n)
        .or_insert_with(|| Box::leak(Box::new(GaussLegendre::compute(n))))
}

/// Composite rule: `panels` equal panels of an `order`-point Gauss-Legendre rule.
pub fn composite<F: FnMut(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    order: usize,
) -> Complex64 {
    let rule = gauss_legendre(order);
    let h = (b - a) / panels as f64;
    let mut f = f;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..panels {
        let lo = a + h * j as f64;
        acc += rule.integrate(&mut f, lo, lo + h);
    }
    acc
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
    pub intervals: usize,
}

struct Piece {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

const ADAPTIVE_ORDER: usize = 15;

fn estimate<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> Piece {
    let rule = gauss_legendre(ADAPTIVE_ORDER);
    let whole = rule.integrate(&mut *f, a, b);
    let m = 0.5 * (a + b);
    let halves = rule.integrate(&mut *f, a, m) + rule.integrate(&mut *f, m, b);
    Piece {
        a,
        b,
        value: halves,
        error: (halves - whole).norm(),
    }
}

/// Globally adaptive integration of a complex-valued `f` over [a, b] to an
/// absolute tolerance. Fails with [`Error::Budget`] after `max_intervals`.
pub fn adaptive<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<Quadrature> {
    let mut heap = BinaryHeap::new();
    heap.push(estimate(&mut f, a, b));
    loop {
        let total_err: f64 = heap.iter().map(|p| p.error).sum();
        if total_err <= abs_tol || heap.len() >= max_intervals {
            // Sum in a fixed order so results do not depend on heap layout.
            let mut pieces: Vec<Piece> = heap.into_vec();
            pieces.sort_by(|x, y| x.a.total_cmp(&y.a));
            let value = pieces
                .iter()
                .fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
            if total_err > abs_tol {
                return Err(Error::Budget {
                    what: "adaptive quadrature",
                    attained: total_err,
                    tolerance: abs_tol,
                });
            }
            return Ok(Quadrature {
                value,
                error: total_err,
                intervals: pieces.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let m = 0.5 * (worst.a + worst.b);
        heap.push(estimate(&mut f, worst.a, m));
        heap.push(estimate(&mut f, m, worst.b));
    }
}

/// Real-valued convenience wrapper around [`adaptive`].
pub fn adaptive_real<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    max_intervals: usize,
) -> Result<(f64, f64)> {
    let q = adaptive(|x| Complex64::new(f(x), 0.0), a, b, abs_tol, max_intervals)?;
    Ok((q.value.re, q.error))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let rule = gauss_legendre(5);
        // degree 9 is exact for 5 points
        let v = rule.integrate(|x| Complex64::new(x.powi(8) + x.powi(9), 0.0), -1.0, 1.0);
        assert!((v.re - 2.0 / 9.0).abs() < 1e-15);
        let wsum: f64 = rule.weights.iter().sum();
        assert!((wsum - 2.0).abs() < 1e-14);
    }

    #[test]
    fn odd_rule_has_center_node() {
        let rule = gauss_legendre(7);
        assert_eq!(rule.nodes[3], 0.0);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn composite_matches_closed_form() {
        let v = composite(|x| Complex64::new(x.cos(), x.sin()), 0.0, 10.0, 20, 10);
        let exact = Complex64::new(10f64.sin(), 1.0 - 10f64.cos());
        assert!((v - exact).norm() < 1e-13);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2
        let (v, _) = adaptive_real(|x| x.powf(-0.5), 0.0, 1.0, 1e-10, 2000).unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn adaptive_reports_budget_exhaustion() {
        let r = adaptive_real(|x| (1.0 / x).sin(), 1e-9, 1.0, 1e-14, 4);
        assert!(matches!(r, Err(Error::Budget { .. })));
    }
}
