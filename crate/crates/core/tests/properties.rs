use std::f64::consts::PI;

use proptest::prelude::*;
use rflight_core::extended::{extended_direct, extended_via_contraction, ExtendedConfig};
use rflight_core::flight::{flight_integral_direct, flight_recursive, flight_two_step, FlightConfig};
use rflight_core::specfun::{bessel_zeros, spherical_bessel_j};
use rflight_core::Error;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 32, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn three_term_recurrence(n in 1usize..60, x in 0.05f64..80.0) {
        let (a, b, c) = (
            spherical_bessel_j(n - 1, x).unwrap(),
            spherical_bessel_j(n, x).unwrap(),
            spherical_bessel_j(n + 1, x).unwrap(),
        );
        let lhs = a + c;
        let rhs = (2 * n + 1) as f64 / x * b;
        prop_assert!((lhs - rhs).abs() <= 1e-11 * a.abs().max(c.abs()).max(1e-300), "{lhs} {rhs}");
    }

    #[test]
    fn zeros_are_roots_and_increase(l in 0usize..20) {
        let t = bessel_zeros(l, 30).unwrap();
        for w in t.zeros().windows(2) {
            prop_assert!(w[1] - w[0] > 2.5);
        }
        for &z in t.zeros() {
            prop_assert!(spherical_bessel_j(l, z).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn two_step_routes_agree(m in 0usize..3, r1 in 0.5f64..2.0, r2 in 0.5f64..2.0, t in 0.05f64..0.95) {
        let cfg = FlightConfig::new(m, vec![r1, r2]).unwrap();
        let s = cfg.support();
        let r = s.r_min + t * (s.r_max - s.r_min);
        let exact = flight_two_step(m, r, r1, r2).unwrap();
        let rec = flight_recursive(&cfg, r, 1e-11).unwrap().value;
        let dir = flight_integral_direct(&cfg, r, 1e-11).unwrap().value;
        prop_assert!((rec - exact).abs() < 1e-8 * exact.abs().max(1.0), "{rec} {exact}");
        prop_assert!((dir - exact).abs() < 1e-7 * exact.abs().max(1.0), "{dir} {exact}");
    }

    #[test]
    fn flights_vanish_off_support(m in 0usize..3, lengths in prop::collection::vec(0.5f64..2.0, 2..4), far in 1.01f64..2.0) {
        let cfg = FlightConfig::new(m, lengths).unwrap();
        let r = cfg.support().r_max * far;
        prop_assert!(flight_recursive(&cfg, r, 1e-10).unwrap().value.abs() < 1e-9);
    }

    #[test]
    fn extended_routes_agree(l in 0usize..5, dm in 0usize..2, big_r in 0.5f64..1.5, x in 0.5f64..1.5, r2 in 0.5f64..1.5) {
        let m = l.saturating_sub(dm);
        let cfg = ExtendedConfig::new(l, big_r, x, FlightConfig::new(m, vec![1.0, r2]).unwrap()).unwrap();
        let d = extended_direct(&cfg, 1e-10).unwrap().value;
        let c = extended_via_contraction(&cfg, 1e-10).unwrap().value;
        prop_assert!((d - c).abs() < 1e-6 * d.abs().max(1.0), "{d} {c}");
    }
}

#[test]
fn unit_steps() {
    let cfg = FlightConfig::new(0, vec![1.0, 1.0]).unwrap();
    assert!((flight_recursive(&cfg, 1.0, 1e-12).unwrap().value - PI / 4.0).abs() < 1e-10);
    assert!(matches!(FlightConfig::new(0, vec![1.0, -1.0]), Err(Error::Domain(_))));
    assert!(matches!(FlightConfig::new(0, vec![]), Err(Error::Domain(_))));
}
