//! The complex argument type and its textual form.

use num_complex::Complex64;

use crate::{Error, Result};

/// A point s = σ + it of the complex plane.
///
/// Operations reject non-finite points with [`Error::NonFinite`].
pub type ComplexPoint = Complex64;

pub(crate) fn c(re: f64, im: f64) -> ComplexPoint {
    Complex64::new(re, im)
}

pub(crate) fn finite(s: ComplexPoint) -> Result<ComplexPoint> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(s)
    } else {
        Err(Error::NonFinite(s))
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` (also with `j`), e.g. `0.5+14.134725i`.
pub fn parse_complex(text: &str) -> Result<ComplexPoint> {
    let bad = || Error::domain(format!("cannot parse complex number {text:?}"));
    let t: String = text.chars().filter(|ch| !ch.is_whitespace()).collect();
    if t.is_empty() {
        return Err(bad());
    }
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        let re: f64 = t.parse().map_err(|_| bad())?;
        return finite(c(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not part of an exponent.
    let bytes = body.as_bytes();
    let mut split = None;
    for idx in (1..bytes.len()).rev() {
        if (bytes[idx] == b'+' || bytes[idx] == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
            break;
        }
    }
    let parse_im = |s: &str| -> Result<f64> {
        match s {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => s.parse().map_err(|_| bad()),
        }
    };
    let z = match split {
        Some(idx) => {
            let re: f64 = body[..idx].parse().map_err(|_| bad())?;
            c(re, parse_im(&body[idx..])?)
        }
        None => c(0.0, parse_im(body)?),
    };
    finite(z).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_common_forms() {
        assert_eq!(parse_complex("0.5+14.134725i").unwrap(), c(0.5, 14.134725));
        assert_eq!(parse_complex("2").unwrap(), c(2.0, 0.0));
        assert_eq!(parse_complex("-3i").unwrap(), c(0.0, -3.0));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), c(1e-3, -20.0));
        assert_eq!(parse_complex("1-i").unwrap(), c(1.0, -1.0));
        assert_eq!(parse_complex(" 4 - 2j ").unwrap(), c(4.0, -2.0));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_complex("").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("nan").is_err());
        assert!(parse_complex("1+2").is_err());
    }
}
