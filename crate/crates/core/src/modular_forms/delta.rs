use std::sync::{Arc, Mutex};

use super::{GrowthBound, QExpansion};
use crate::complex::c;
use crate::{Error, Result};

/// Largest truncation order accepted for Δ.
pub const MAX_DELTA_ORDER: usize = 1_000_000;

/// Coefficients of ∏_{n≥1}(1 − q^n)^{24} through q^{len−1}, exactly.
///
/// Jacobi's identity ∏(1 − q^n)³ = Σ_k (−1)^k (2k+1) q^{k(k+1)/2} gives a
/// sparse series with about √(2·len) terms; the 24th power is its 8th
/// power, built by seven dense-times-sparse products.
fn eta24_product(len: usize) -> Result<Vec<i128>> {
    let mut sparse: Vec<(usize, i128)> = Vec::new();
    let mut k = 0usize;
    while k * (k + 1) / 2 < len {
        let sign = if k.is_multiple_of(2) { 1 } else { -1 };
        sparse.push((k * (k + 1) / 2, sign * (2 * k as i128 + 1)));
        k += 1;
    }
    let mut dense = vec![0i128; len];
    for &(e, v) in &sparse {
        dense[e] = v;
    }
    let overflow = || Error::IntegerOverflow("expanding the Delta product");
    for _ in 0..7 {
        let mut next = vec![0i128; len];
        for (i, &a) in dense.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for &(e, v) in &sparse {
                let j = i + e;
                if j >= len {
                    break;
                }
                let prod = a.checked_mul(v).ok_or_else(overflow)?;
                next[j] = next[j].checked_add(prod).ok_or_else(overflow)?;
            }
        }
        dense = next;
    }
    Ok(dense)
}

/// τ(0), τ(1), …, τ(m) with τ(0) = 0, computed once and shared.
pub fn tau_coefficients(m: usize) -> Result<Arc<Vec<i128>>> {
    if m > MAX_DELTA_ORDER {
        return Err(Error::domain(format!(
            "Delta order {m} exceeds {MAX_DELTA_ORDER}"
        )));
    }
    static CACHE: Mutex<Option<Arc<Vec<i128>>>> = Mutex::new(None);
    let mut guard = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(cached) = guard.as_ref() {
        if cached.len() > m {
            return Ok(Arc::clone(cached));
        }
    }
    // Grow generously so a sequence of slightly larger requests stays cheap.
    let len = (m + 1)
        .max(guard.as_ref().map_or(0, |v| 2 * v.len()))
        .min(MAX_DELTA_ORDER + 1);
    let product = eta24_product(len)?;
    let mut tau = vec![0i128; len];
    tau[1..].copy_from_slice(&product[..len - 1]);
    let tau = Arc::new(tau);
    *guard = Some(Arc::clone(&tau));
    Ok(tau)
}

/// Δ(z) = q ∏(1 − q^n)^{24} = Σ τ(n) q^n through q^M: weight 12, period 1.
pub fn delta_q_expansion(m: usize) -> Result<QExpansion> {
    let m = m.max(1);
    let tau = tau_coefficients(m)?;
    let coeffs = tau[..=m].iter().map(|&t| c(t as f64, 0.0)).collect();
    // |τ(n)| ≤ d(n) n^{11/2} ≤ 2 n^6
    QExpansion::new(
        12.0,
        1.0,
        1.0,
        coeffs,
        GrowthBound {
            constant: 2.0,
            exponent: 6.0,
        },
    )
}
