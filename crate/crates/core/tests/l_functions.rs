use lfl_core::hecke_l::{euler_product_gap, phi_completed, phi_completed_split, LSeriesDescriptor};
use lfl_core::modular_forms::delta_q_expansion;
use lfl_core::tate_local::euler_product_partial;
use lfl_core::zeta_core::{halfplane_cutoff, xi, xi_split, zeta, zeta_halfplane};
use lfl_core::ComplexPoint;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    // Two unrelated routes: the theta-series completion and Euler-Maclaurin.
    #[test]
    fn zeta_routes_agree(re in 0.1..3.0f64, im in -15.0..15.0f64) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 0.05);
        let via_xi = zeta(s).unwrap();
        let direct = zeta_halfplane(s, halfplane_cutoff(s)).unwrap().value;
        prop_assert!((via_xi - direct).norm() < 1e-10 * direct.norm().max(1.0), "{s}: {via_xi} vs {direct}");
    }

    #[test]
    fn xi_reflection_with_shifted_split(re in -2.0..3.0f64, im in 0.2..25.0f64) {
        let s = c(re, im);
        let here = xi(s).unwrap().value;
        let there = xi_split(c(1.0 - re, -im), 1.25).unwrap().value;
        prop_assert!((here - there).norm() < 1e-12 * here.norm().max(1.0));
    }
}

#[test]
fn euler_product_gap_shrinks_with_x() {
    let desc = LSeriesDescriptor::delta(10_000).unwrap();
    for s in [c(2.0, 0.0), c(2.5, 5.0)] {
        let gaps: Vec<f64> = [100, 1_000, 10_000]
            .iter()
            .map(|&x| euler_product_gap(&desc, s, x).unwrap())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "s = {s}: {gaps:?}");
    }
}

#[test]
fn partial_euler_product_approaches_zeta() {
    let s = c(2.0, 1.0);
    let target = zeta(s).unwrap();
    let gaps: Vec<f64> = [10, 100, 1_000, 10_000]
        .iter()
        .map(|&x| (euler_product_partial(s, x).unwrap() - target).norm())
        .collect();
    assert!(gaps.windows(2).all(|w| w[1] < w[0]), "{gaps:?}");
    assert!(gaps[3] < 1e-4);
}

#[test]
fn delta_reflection_tests_modularity() {
    let f = delta_q_expansion(400).unwrap();
    for s in [c(4.0, 3.0), c(6.0, 0.0), c(8.5, -12.0)] {
        let a = phi_completed(s, &f).unwrap().value;
        let b = phi_completed_split(c(12.0, 0.0) - s, &f, 1.25)
            .unwrap()
            .value;
        assert!((a - b).norm() < 1e-9 * a.norm().max(1e-3), "s = {s}");
    }
}
