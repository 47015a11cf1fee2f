use std::f64::consts::PI;

use num_complex::Complex64;

use super::is_nonpositive_integer;
use super::lanczos::{LANCZOS_COEFFS, LANCZOS_G};
use crate::complex::{c, finite};
use crate::{ComplexPoint, Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// log Γ(s) for s off the non-positive integers.
///
/// On Re s ≥ 1/2 this is the Lanczos form, which is analytic there and
/// agrees with the principal branch of log Γ. The left half-plane uses
/// reflection; there the imaginary part is only fixed modulo 2π, which is
/// all that exponentiation needs.
pub fn log_gamma(s: ComplexPoint) -> Result<ComplexPoint> {
    let s = finite(s)?;
    if is_nonpositive_integer(s) {
        return Err(Error::Pole {
            function: "Gamma",
            at: s,
        });
    }
    if s.re >= 0.5 {
        return Ok(lanczos_log(s));
    }
    // Γ(s)Γ(1−s) = π / sin(πs)
    Ok(c(PI.ln(), 0.0) - log_sin_pi(s) - lanczos_log(c(1.0, 0.0) - s))
}

fn lanczos_log(s: ComplexPoint) -> ComplexPoint {
    let z = s - 1.0;
    let mut series = c(LANCZOS_COEFFS[0], 0.0);
    for (k, coeff) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += *coeff / (z + k as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (z + 0.5) * t.ln() - t + series.ln() + HALF_LN_2PI
}

/// log sin(πs), stable for large |Im s|.
pub fn log_sin_pi(s: ComplexPoint) -> ComplexPoint {
    if s.im.abs() < 10.0 {
        return (s * PI).sin().ln();
    }
    // sin(πs) = (e^{iπs} − e^{−iπs}) / 2i; keep the dominant exponential symbolic.
    let i = c(0.0, 1.0);
    if s.im > 0.0 {
        // dominant: −e^{−iπs}/(2i)
        -i * PI * s + (c(1.0, 0.0) - (i * 2.0 * PI * s).exp()).ln() - (c(0.0, -2.0)).ln()
    } else {
        i * PI * s + (c(1.0, 0.0) - (-i * 2.0 * PI * s).exp()).ln() - (c(0.0, 2.0)).ln()
    }
}

/// Γ(s), failing with [`Error::Overflow`] (carrying log Γ(s)) when the value
/// leaves the binary64 range.
pub fn gamma(s: ComplexPoint) -> Result<ComplexPoint> {
    let lg = log_gamma(s)?;
    if lg.re > 709.0 || lg.re < -745.0 {
        return Err(Error::Overflow {
            function: "Gamma",
            log_value: lg,
        });
    }
    if s.im == 0.0 {
        // keep real arguments real
        let v = lg.exp();
        let sign = if s.re > 0.0 || (s.re.floor() as i64).rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        return Ok(c(sign * v.norm(), 0.0));
    }
    Ok(lg.exp())
}

/// 1/Γ(s), entire; exactly zero at the non-positive integers.
pub fn reciprocal_gamma(s: ComplexPoint) -> Result<ComplexPoint> {
    let s = finite(s)?;
    if is_nonpositive_integer(s) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let lg = log_gamma(s)?;
    if -lg.re > 709.0 {
        return Err(Error::Overflow {
            function: "1/Gamma",
            log_value: -lg,
        });
    }
    if s.im == 0.0 {
        return gamma(s).map(|g| c(1.0 / g.re, 0.0));
    }
    Ok((-lg).exp())
}
