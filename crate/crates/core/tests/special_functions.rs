use lfl_core::special_fn::{
    bessel_k, bessel_k_integral, gamma, theta_direct, upper_incomplete_gamma,
};
use lfl_core::ComplexPoint;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im)
}

fn rel(a: ComplexPoint, b: ComplexPoint) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bessel_k_is_even_in_order(re in -4.0..4.0f64, im in -4.0..4.0f64, y in 0.5..12.0f64) {
        let a = bessel_k(c(re, im), y).unwrap().value;
        let b = bessel_k(c(-re, -im), y).unwrap().value;
        prop_assert!(rel(a, b) < 1e-11, "K_nu = {a}, K_-nu = {b}");
    }

    #[test]
    fn gamma_recursion(re in 0.1..12.0f64, im in -10.0..10.0f64) {
        let s = c(re, im);
        let lhs = gamma(s + 1.0).unwrap();
        let rhs = s * gamma(s).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn jacobi_inversion(log_t in (0.05f64).ln()..(20.0f64).ln()) {
        let t = log_t.exp();
        let lhs = theta_direct(t).unwrap();
        let rhs = theta_direct(1.0 / t).unwrap() / t.sqrt();
        prop_assert!((lhs - rhs).abs() < 1e-12, "t = {t}: {lhs} vs {rhs}");
    }

    #[test]
    fn incomplete_gamma_recurrence(re in 0.2..6.0f64, im in -5.0..5.0f64, x in 0.1..25.0f64) {
        // Γ(s+1, x) = sΓ(s, x) + x^s e^{-x}
        let s = c(re, im);
        let lhs = upper_incomplete_gamma(s + 1.0, x).unwrap().value;
        let rhs = s * upper_incomplete_gamma(s, x).unwrap().value + (s * x.ln() - x).exp();
        prop_assert!(rel(lhs, rhs) < 1e-10, "{lhs} vs {rhs}");
    }
}

#[test]
fn incomplete_gamma_is_complete_at_zero() {
    for s in [c(0.7, 0.0), c(1.5, 2.0), c(4.0, -3.0), c(9.5, 1.0)] {
        let upper = upper_incomplete_gamma(s, 1e-14).unwrap().value;
        assert!(rel(upper, gamma(s).unwrap()) < 1e-9, "s = {s}");
    }
}

#[test]
fn bessel_routes_agree() {
    for (nu, y) in [
        (c(0.0, 0.0), 1.0),
        (c(0.5, 3.0), 2.5),
        (c(1.7, -0.4), 0.8),
        (c(0.25, 10.0), 4.0),
    ] {
        let a = bessel_k(nu, y).unwrap().value;
        let b = bessel_k_integral(nu, y).unwrap().value;
        assert!(rel(a, b) < 1e-9, "nu = {nu}, y = {y}: {a} vs {b}");
    }
    // K_{1/2}(y) = sqrt(pi/2y) e^{-y}
    let y = 3.0;
    let exact = (std::f64::consts::PI / (2.0 * y)).sqrt() * (-y).exp();
    assert!((bessel_k(c(0.5, 0.0), y).unwrap().value.re - exact).abs() < 1e-14);
}
