//! Dirichlet characters mod N built from the structure of (Z/NZ)*, their
//! conductors and Gauss sums, and L(s, χ).

use std::f64::consts::PI;

use serde::Serialize;

use crate::complex::{c, finite};
use crate::primes::{divisors, factorize, gcd};
use crate::special_fn::Estimate;
use crate::zeta_core::zeta;
use crate::{ComplexPoint, Error, Result};

/// Largest modulus for which characters are tabulated.
pub const MAX_MODULUS: u64 = 10_000;

/// A Dirichlet character mod N stored as a table over all residues.
///
/// `exponents[n]` is `Some(e)` with χ(n) = e^{2πi e/order} when gcd(n, N) = 1
/// and `None` otherwise; `values` holds the same data as complex numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DirichletCharacter {
    pub modulus: u64,
    /// Exponent of (Z/NZ)*; every value is an `order`-th root of unity.
    pub order: u64,
    pub exponents: Vec<Option<u64>>,
    pub values: Vec<ComplexPoint>,
    /// χ(−1) = 1
    pub even: bool,
    pub primitive: bool,
    pub conductor: u64,
}

/// e^{2πi k/m}, exact at multiples of a quarter turn.
pub(crate) fn root_of_unity(k: u64, m: u64) -> ComplexPoint {
    let k = k % m;
    if (4 * k).is_multiple_of(m) {
        return match 4 * k / m {
            0 => c(1.0, 0.0),
            1 => c(0.0, 1.0),
            2 => c(-1.0, 0.0),
            _ => c(0.0, -1.0),
        };
    }
    ComplexPoint::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// One cyclic factor of (Z/NZ)*: a generator of order `order` modulo
/// `prime_power`, with discrete logs for every residue mod `prime_power`
/// (unit or not; non-units are never consulted).
struct CyclicFactor {
    prime_power: u64,
    order: u64,
    log: Vec<u64>,
}

impl CyclicFactor {
    /// Discrete logs of the subgroup generated by `g` mod `m`, assuming it has
    /// order `order`. `lift` maps a residue to the component it belongs to.
    fn new(g: u64, m: u64, order: u64, lift: impl Fn(u64) -> u64) -> Self {
        let mut log = vec![0; m as usize];
        let mut x = 1 % m;
        for k in 0..order {
            log[x as usize] = k;
            x = x * g % m;
        }
        // Residues outside ⟨g⟩ are located through `lift`.
        let lifted: Vec<u64> = (0..m).map(|r| log[lift(r) as usize]).collect();
        Self {
            prime_power: m,
            order,
            log: lifted,
        }
    }
}

fn multiplicative_order(g: u64, m: u64) -> u64 {
    let mut x = g % m;
    let mut k = 1;
    while x != 1 {
        x = x * g % m;
        k += 1;
    }
    k
}

fn primitive_root(p: u64, pe: u64, phi: u64) -> u64 {
    // Odd prime powers are cyclic; search directly for an element of full order.
    (2..pe)
        .find(|&g| gcd(g, p) == 1 && multiplicative_order(g, pe) == phi)
        .expect("odd prime powers are cyclic")
}

fn cyclic_factors(n: u64) -> Vec<CyclicFactor> {
    let mut out = Vec::new();
    for (p, e) in factorize(n) {
        let pe = p.pow(e);
        if p == 2 {
            match e {
                1 => {}
                2 => out.push(CyclicFactor::new(3, 4, 2, |r| r)),
                _ => {
                    // (Z/2^eZ)* = ⟨−1⟩ × ⟨5⟩; r ≡ ±5^k.
                    let minus_one =
                        CyclicFactor::new(
                            pe - 1,
                            pe,
                            2,
                            move |r| if r % 4 == 3 { pe - 1 } else { 1 },
                        );
                    let five = CyclicFactor::new(5, pe, pe / 4, move |r| {
                        if r % 4 == 3 {
                            (pe - r) % pe
                        } else {
                            r
                        }
                    });
                    out.push(minus_one);
                    out.push(five);
                }
            }
        } else {
            let phi = pe / p * (p - 1);
            let g = primitive_root(p, pe, phi);
            out.push(CyclicFactor::new(g, pe, phi, |r| r));
        }
    }
    out
}

/// Euler's φ(N).
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

impl DirichletCharacter {
    fn from_exponents(modulus: u64, order: u64, exponents: Vec<Option<u64>>) -> Self {
        let values = exponents
            .iter()
            .map(|e| e.map_or(c(0.0, 0.0), |e| root_of_unity(e, order)))
            .collect();
        let even = modulus <= 2 || exponents[(modulus - 1) as usize] == Some(0);
        let mut chi = Self {
            modulus,
            order,
            exponents,
            values,
            even,
            primitive: true,
            conductor: modulus,
        };
        chi.conductor = chi.compute_conductor();
        chi.primitive = chi.conductor == modulus;
        chi
    }

    /// χ(n) for any integer n.
    pub fn value(&self, n: i64) -> ComplexPoint {
        self.values[n.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|e| e.is_none() || *e == Some(0))
    }

    /// Smallest d | N such that χ(n) = 1 for every unit n ≡ 1 mod d.
    fn compute_conductor(&self) -> u64 {
        let n = self.modulus;
        for d in divisors(n) {
            let induced_from_d = (1..n)
                .step_by(d as usize)
                .filter(|&m| gcd(m, n) == 1)
                .all(|m| self.exponents[m as usize] == Some(0));
            if induced_from_d {
                return d;
            }
        }
        n
    }

    /// The complex-conjugate character.
    pub fn conj(&self) -> Self {
        let exps = self
            .exponents
            .iter()
            .map(|e| e.map(|e| (self.order - e) % self.order))
            .collect();
        Self::from_exponents(self.modulus, self.order, exps)
    }

    /// The character mod `modulus` (a multiple of N) induced by χ.
    pub fn induce(&self, modulus: u64) -> Result<Self> {
        if modulus == 0 || !modulus.is_multiple_of(self.modulus) || modulus > MAX_MODULUS {
            return Err(Error::domain(format!(
                "cannot induce a character mod {} to mod {modulus}",
                self.modulus
            )));
        }
        let exps = (0..modulus)
            .map(|n| {
                if gcd(n, modulus) == 1 {
                    self.exponents[(n % self.modulus) as usize]
                } else {
                    None
                }
            })
            .collect();
        Ok(Self::from_exponents(modulus, self.order, exps))
    }
}

/// All φ(N) characters mod N, ordered by their exponent vectors on the
/// standard generators.
pub fn characters_mod(n: u64) -> Result<Vec<DirichletCharacter>> {
    if n == 0 || n > MAX_MODULUS {
        return Err(Error::domain(format!(
            "modulus must be in 1..={MAX_MODULUS}, got {n}"
        )));
    }
    let factors = cyclic_factors(n);
    let order = factors.iter().fold(1, |acc, f| lcm(acc, f.order));
    let mut out = Vec::new();
    let mut ks = vec![0u64; factors.len()];
    loop {
        let exps = (0..n)
            .map(|r| {
                if gcd(r, n) != 1 {
                    return None;
                }
                let e = factors.iter().zip(&ks).fold(0, |acc, (f, &k)| {
                    let l = f.log[(r % f.prime_power) as usize];
                    (acc + k * l % f.order * (order / f.order)) % order
                });
                Some(e)
            })
            .collect();
        out.push(DirichletCharacter::from_exponents(n, order, exps));
        // odometer over exponent vectors
        let mut i = 0;
        loop {
            if i == ks.len() {
                return Ok(out);
            }
            ks[i] += 1;
            if ks[i] < factors[i].order {
                break;
            }
            ks[i] = 0;
            i += 1;
        }
    }
}

/// (primitive?, conductor).
pub fn is_primitive(chi: &DirichletCharacter) -> (bool, u64) {
    (chi.primitive, chi.conductor)
}

/// g(χ) = Σ_{n mod r} χ(n) e^{2πin/r}.
pub fn gauss_sum(chi: &DirichletCharacter) -> ComplexPoint {
    let r = chi.modulus;
    (0..r)
        .map(|n| chi.values[n as usize] * root_of_unity(n, r))
        .sum()
}

/// e^z − 1 without cancellation for small |z|.
fn expm1(z: ComplexPoint) -> ComplexPoint {
    if z.norm() > 0.5 {
        return z.exp() - 1.0;
    }
    let mut term = z;
    let mut sum = z;
    for k in 2..40 {
        term = term * z / k as f64;
        sum += term;
        if term.norm() < 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// ((1+u)^{w} − 1)/w, continuous at w = 0 where it is log(1+u).
fn power_difference(u: f64, w: ComplexPoint) -> ComplexPoint {
    let l = u.ln_1p();
    if w.norm() < 1e-300 {
        return c(l, 0.0);
    }
    expm1(w * l) / w
}

// B_2, B_4, …, B_16
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// L(s, χ) = Σ χ(n) n^{−s}.
///
/// The first ≈ `n_terms` terms (a whole number of periods) are summed
/// directly. The rest is split by residue class a mod q and each class
/// Σ_{m≥K} (a + mq)^{−s} is replaced by its Euler-Maclaurin expansion. The
/// integral parts are combined through ((1+u)^{1−s} − 1)/(1−s) so the
/// cancellation Σ χ(a) = 0 of a non-principal character is exact and
/// s = 1 needs no special case.
pub fn dirichlet_l(s: ComplexPoint, chi: &DirichletCharacter, n_terms: u64) -> Result<Estimate> {
    let s = finite(s)?;
    let q = chi.modulus;
    let principal = chi.is_trivial();
    if q == 1 {
        return Ok(Estimate::new(zeta(s)?, 0.0));
    }
    if principal && !(s.re > 1.0) {
        return Err(Error::domain(format!(
            "principal character needs Re s > 1, got {s}"
        )));
    }
    if !(s.re > 0.0) {
        return Err(Error::domain(format!("L(s, chi) needs Re s > 0, got {s}")));
    }
    let periods = (n_terms / q).max(1);
    let cut = periods * q;
    let mut direct = c(0.0, 0.0);
    for n in (1..=cut).rev() {
        let v = chi.values[(n % q) as usize];
        if v != c(0.0, 0.0) {
            direct += v * (-s * (n as f64).ln()).exp();
        }
    }
    // Tail: classes a = 1..q, m ≥ K where a + Kq is the first term past `cut`.
    let k = periods as f64;
    let kq = cut as f64;
    let one_minus_s = c(1.0, 0.0) - s;
    let lead = (one_minus_s * kq.ln()).exp() / q as f64;
    let mut char_sum = c(0.0, 0.0);
    let mut integral = c(0.0, 0.0);
    let mut boundary = c(0.0, 0.0);
    let mut corrections = vec![c(0.0, 0.0); BERNOULLI.len()];
    for a in 1..=q {
        let v = chi.values[(a % q) as usize];
        if v == c(0.0, 0.0) {
            continue;
        }
        let base = a as f64 + k * q as f64;
        char_sum += v;
        integral += v * power_difference(a as f64 / kq, one_minus_s);
        let f0 = (-s * base.ln()).exp();
        boundary += v * f0;
        // f^{(2j−1)}(K) = (−s)(−s−1)⋯(−s−2j+2) q^{2j−1} (a+Kq)^{−s−2j+1}
        let mut falling = -s;
        let mut scale = q as f64 / base;
        let mut fact = 2.0;
        for (j, b) in BERNOULLI.iter().enumerate() {
            corrections[j] -= v * f0 * falling * scale * (b / fact);
            let m = 2.0 * (j as f64 + 1.0);
            falling *= (-s - (m - 1.0)) * (-s - m);
            scale *= (q as f64 / base).powi(2);
            fact *= (m + 1.0) * (m + 2.0);
        }
    }
    let integral_part = if principal {
        if s == c(1.0, 0.0) {
            return Err(Error::Pole {
                function: "L(s, principal chi)",
                at: s,
            });
        }
        lead * (char_sum / (s - 1.0) - integral)
    } else {
        -lead * integral
    };
    let mut tail = integral_part + boundary * 0.5;
    let mut last = f64::INFINITY;
    for term in corrections {
        if term.norm() > last {
            break;
        }
        tail += term;
        last = term.norm();
    }
    let value = direct + tail;
    let error = last + 8.0 * f64::EPSILON * (direct.norm() + cut as f64 * 1e-16);
    if error > 1e-9 * value.norm().max(1.0) {
        return Err(Error::Budget {
            what: "Dirichlet L-series tail",
            attained: error,
            tolerance: 1e-9,
        });
    }
    Ok(Estimate::new(value, error))
}
