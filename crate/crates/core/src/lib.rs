//! Completed zeta and L-functions on the rationals, together with the
//! machinery needed to check their identities numerically.
//!
//! Everything is computed in binary64. Each evaluator either returns a
//! value together with an attained error estimate, or an [`Error`] that
//! says why the requested accuracy could not be met.
//!
//! Module map:
//!
//! | module | contents |
//! |--------|----------|
//! | [`special_fn`] | log-gamma, incomplete gamma, K-Bessel, Jacobi theta |
//! | [`zeta_core`] | ξ(s), ζ(s), half-plane evaluator, convexity probe, scattering ratio |
//! | [`tate_local`] | p-adic and archimedean local factors, partial Euler products |
//! | [`dirichlet`] | characters mod N, primitivity, Gauss sums, L(s, χ) |
//! | [`modular_forms`] | q-expansions: Δ, G_k, θ; Hecke operators; modularity residuals |
//! | [`hecke_l`] | completed L-functions Φ(s), Euler products, twisted functional equations |
//! | [`mellin_converse`] | Mellin inversion along vertical lines |
//! | [`eisenstein`] | real-analytic E(z, s): lattice sum, Fourier expansion, scattering |
//! | [`langlands`] | Satake parameters, symmetric/exterior/Rankin-Selberg factors, Sato-Tate |
//! | [`diophantine`] | sums of three squares and their distribution on the sphere |
//! | [`suites`] | named verification suites producing [`VerificationReport`]s |
//! | [`tables`] | deterministic CSV exports |

// `!(x > 0.0)` is written on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod budget;
pub mod complex;
pub mod diophantine;
pub mod dirichlet;
pub mod eisenstein;
pub mod error;
pub mod hecke_l;
pub mod langlands;
pub mod mellin_converse;
pub mod modular_forms;
pub mod primes;
pub mod quad;
pub mod report;
pub mod special_fn;
pub mod suites;
pub mod tables;
pub mod tate_local;
pub mod zeta_core;

pub use budget::AccuracyBudget;
pub use complex::{parse_complex, ComplexPoint};
pub use error::{Error, Result};
pub use report::VerificationReport;
