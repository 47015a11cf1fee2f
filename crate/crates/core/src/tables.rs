//! Deterministic CSV exports. Every table starts with a comment row
//! describing what each column holds, then a header row.

use crate::complex::c;
use crate::diophantine::three_squares_solutions;
use crate::eisenstein::{eisenstein, UpperHalfPoint};
use crate::langlands::{sato_tate_report, PrimeCoefficients};
use crate::modular_forms::tau_coefficients;
use crate::{ComplexPoint, Error, Result};

/// Table kinds accepted by [`emit_table`].
pub const TABLES: &[&str] = &[
    "tau",
    "sato-tate-moments",
    "histogram",
    "eisenstein-grid",
    "three-squares",
];

#[derive(Debug, Clone, PartialEq)]
pub struct TableParams {
    /// Row count for `tau`, target n for `three-squares`.
    pub n: u64,
    pub x: u64,
    pub bins: usize,
    pub m_max: u32,
    pub s: ComplexPoint,
}

impl Default for TableParams {
    fn default() -> Self {
        Self {
            n: 100,
            x: 100_000,
            bins: 40,
            m_max: 8,
            s: c(2.0, 0.0),
        }
    }
}

/// Canonical name for a table kind; `satotake-moments` is accepted as an
/// alias of `sato-tate-moments`.
pub fn canonical_table(kind: &str) -> Result<&'static str> {
    let kind = if kind == "satotake-moments" {
        "sato-tate-moments"
    } else {
        kind
    };
    TABLES
        .iter()
        .copied()
        .find(|k| *k == kind)
        .ok_or_else(|| Error::Unknown {
            kind: "table",
            name: kind.to_string(),
        })
}

/// A CSV document: one `#` comment line, then the header and rows.
fn document(comment: &str, header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut buf = format!("# {comment}\n").into_bytes();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        let io = |e: csv::Error| Error::domain(format!("CSV output failed: {e}"));
        w.write_record(header).map_err(io)?;
        for row in rows {
            w.write_record(&row).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::domain(format!("CSV output failed: {e}")))?;
    }
    Ok(String::from_utf8(buf).expect("CSV of ASCII numbers is UTF-8"))
}

pub fn emit_table(kind: &str, params: &TableParams) -> Result<String> {
    match canonical_table(kind)? {
        "tau" => {
            let n = params.n as usize;
            let tau = tau_coefficients(n)?;
            let rows = (1..=n)
                .map(|i| {
                    vec![
                        i.to_string(),
                        tau[i].to_string(),
                        (tau[i] as f64 / (i as f64).powf(5.5)).to_string(),
                    ]
                })
                .collect();
            document(
                "n; tau(n), the q^n coefficient of q prod (1 - q^m)^24; tau(n)/n^(11/2)",
                &["n", "tau", "tau_normalized"],
                rows,
            )
        }
        "sato-tate-moments" => {
            let r = sato_tate_report(
                &PrimeCoefficients::delta(params.x)?,
                params.x,
                params.m_max,
                params.bins.max(1),
            )?;
            let rows = r
                .moments
                .iter()
                .map(|m| {
                    vec![
                        m.m.to_string(),
                        m.empirical.to_string(),
                        m.target.to_string(),
                    ]
                })
                .collect();
            document(
                "m; (1/pi(X)) sum_{p<=X} a_p^m for Delta; (1/2pi) int x^m sqrt(4-x^2) dx",
                &["m", "empirical", "target"],
                rows,
            )
        }
        "histogram" => {
            let r = sato_tate_report(
                &PrimeCoefficients::delta(params.x)?,
                params.x,
                0,
                params.bins,
            )?;
            let rows = r
                .histogram
                .iter()
                .map(|b| {
                    vec![
                        b.bin_center.to_string(),
                        b.empirical_density.to_string(),
                        b.target_density.to_string(),
                    ]
                })
                .collect();
            document(
                "theta bin centre; density of theta_p = arccos(a_p/2) for Delta, p <= X; (2/pi) sin^2 theta averaged over the bin",
                &["bin_center", "empirical_density", "target_density"],
                rows,
            )
        }
        "eisenstein-grid" => {
            let s = params.s;
            let mut rows = Vec::new();
            for j in 0..4 {
                let y = 0.5 + 0.5 * j as f64;
                for i in 0..=5 {
                    let x = 0.1 * i as f64;
                    let e = eisenstein(UpperHalfPoint::new(x, y)?, s)?.value;
                    rows.push(
                        [x, y, s.re, s.im, e.re, e.im]
                            .iter()
                            .map(f64::to_string)
                            .collect(),
                    );
                }
            }
            document(
                "z = x + iy; E(z,s) by its Fourier expansion, real and imaginary parts",
                &["x", "y", "s_re", "s_im", "e_re", "e_im"],
                rows,
            )
        }
        "three-squares" => {
            let rows = three_squares_solutions(params.n)?
                .iter()
                .map(|v| v.iter().map(i64::to_string).collect())
                .collect();
            document(
                "integer solutions of x^2 + y^2 + z^2 = n, lexicographic",
                &["x", "y", "z"],
                rows,
            )
        }
        _ => unreachable!("canonical_table only returns listed kinds"),
    }
}
