//! Sums of three squares: Gauss's criterion and the distribution of the
//! normalized solutions on the unit sphere.
//!
//! The discrepancy routine is a demonstration of equidistribution, not a
//! test of any rate.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::{Error, Result};

/// Largest n accepted by the enumerator.
pub const MAX_ENUMERATION: u64 = 1_000_000;
/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All (x, y, z) ∈ Z³ with x² + y² + z² = n, signs and orders included,
/// in lexicographic order.
pub fn three_squares_solutions(n: u64) -> Result<Vec<[i64; 3]>> {
    if n > MAX_ENUMERATION {
        return Err(Error::domain(format!(
            "enumeration is capped at n <= {MAX_ENUMERATION}, got {n}"
        )));
    }
    let r = isqrt(n) as i64;
    let rows: Vec<Vec<[i64; 3]>> = (-r..=r)
        .into_par_iter()
        .map(|x| {
            let mut row = Vec::new();
            let rest = n - (x * x) as u64;
            let ry = isqrt(rest) as i64;
            for y in -ry..=ry {
                let left = rest - (y * y) as u64;
                let z = isqrt(left) as i64;
                if (z * z) as u64 == left {
                    if z == 0 {
                        row.push([x, y, 0]);
                    } else {
                        row.push([x, y, -z]);
                        row.push([x, y, z]);
                    }
                }
            }
            row
        })
        .collect();
    Ok(rows.concat())
}

/// Is n a sum of three squares, i.e. not of the form 4^a(8b + 7)?
pub fn gauss_condition(mut n: u64) -> bool {
    if n == 0 {
        return true;
    }
    while n.is_multiple_of(4) {
        n /= 4;
    }
    n % 8 != 7
}

/// The solutions of x² + y² + z² = n scaled onto the unit sphere.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpherePointSet {
    pub n: u64,
    pub points: Vec<[f64; 3]>,
}

impl SpherePointSet {
    pub fn new(n: u64) -> Result<Self> {
        let scale = 1.0 / (n as f64).sqrt();
        let points = three_squares_solutions(n)?
            .into_iter()
            .map(|v| v.map(|t| t as f64 * scale))
            .collect();
        Ok(Self { n, points })
    }
}

/// Max over `caps` random spherical caps of |fraction of D_n in the cap −
/// normalized cap area|.
///
/// A cap is {v : v·u ≥ 1 − h} with u uniform on the sphere and h uniform on
/// (0, 2); its area is the fraction h/2 of the sphere. Caps come from a
/// ChaCha stream seeded with `seed`.
pub fn dn_discrepancy(n: u64, caps: usize, seed: u64) -> Result<f64> {
    let set = SpherePointSet::new(n)?;
    if set.points.is_empty() {
        return Err(Error::domain(format!("{n} is not a sum of three squares")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = set.points.len() as f64;
    let mut worst: f64 = 0.0;
    for _ in 0..caps {
        let z: f64 = rng.gen_range(-1.0..=1.0);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let rho = (1.0 - z * z).sqrt();
        let u = [rho * phi.cos(), rho * phi.sin(), z];
        let h: f64 = rng.gen_range(0.0..2.0);
        let inside = set
            .points
            .iter()
            .filter(|v| v[0] * u[0] + v[1] * u[1] + v[2] * u[2] >= 1.0 - h)
            .count();
        worst = worst.max((inside as f64 / total - h / 2.0).abs());
    }
    Ok(worst)
}
