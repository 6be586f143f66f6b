mod common;

use std::sync::Arc;

use common::{caputo_power, riemann_liouville};
use fracjac::reference::problems::{builtin_problems, prob1, prob2, prob3, prob34, prob4};
use fracjac::reference::MittagLeffler;
use fracjac::special::gamma;
use fracjac::{mittag_leffler, Error, Problem, ProblemRegistry};
use proptest::prelude::*;

/// Exact solutions written as `sum c_i t^beta_i` per component.
fn power_forms(id: &str) -> Vec<Vec<(f64, f64)>> {
    match id {
        "prob2" => vec![vec![(1.0, 8.0), (-3.0, 4.25), (2.25, 0.5)]],
        "prob3" => vec![vec![(1.0, 2.0 / 3.0), (1.0, 0.0)]],
        "prob4" => vec![vec![(1.0, 4.0 / 3.0)]],
        "prob34" => vec![vec![(1.0, 2.0 / 3.0), (1.0, 0.0)], vec![(1.0, 4.0 / 3.0)]],
        other => panic!("no power form for {other}"),
    }
}

#[test]
fn exact_solutions_satisfy_their_equations() {
    for problem in [prob2(), prob3(), prob4(), prob34()] {
        let forms = power_forms(problem.id());
        let alpha = problem.alpha();
        for i in 1..=20 {
            let t = problem.horizon() * i as f64 / 20.0;
            let y = problem.exact_at(t).unwrap();
            for (comp, terms) in forms.iter().enumerate() {
                let from_terms: f64 = terms.iter().map(|(c, b)| c * t.powf(*b)).sum();
                assert!((from_terms - y[comp]).abs() < 1e-14);
            }
            let mut rhs = vec![0.0; problem.dim()];
            problem.rhs(t, &y, &mut rhs);
            for (comp, terms) in forms.iter().enumerate() {
                let derivative: f64 = terms.iter().map(|(c, b)| c * caputo_power(alpha, *b, t)).sum();
                let scale = derivative.abs().max(1.0);
                assert!(
                    (rhs[comp] - derivative).abs() < 1e-12 * scale,
                    "{} component {comp} at t = {t}: {} vs {derivative}",
                    problem.id(),
                    rhs[comp]
                );
            }
        }
    }
}

#[test]
fn linear_problem_solves_its_integral_form() {
    // y(t) = 1 + I^0.6 (-10 y)(t)
    let problem = prob1();
    let exact = |t: f64| problem.exact_at(t).unwrap()[0];
    for t in [0.05, 0.3, 1.0, 2.5] {
        let integral = riemann_liouville(|tau| -10.0 * exact(tau), 0.6, t);
        let y = exact(t);
        assert!((1.0 + integral - y).abs() < 1e-10, "t = {t}: {} vs {y}", 1.0 + integral);
    }
}

#[test]
fn forced_problem_constant_term() {
    let mut out = [0.0];
    prob2().rhs(0.0, &[0.0], &mut out);
    assert_eq!(out[0], 2.25 * gamma(1.5));
    assert!((out[0] - 2.25 * std::f64::consts::PI.sqrt() / 2.0).abs() < 1e-15);
}

#[test]
fn spot_values_of_exact_solutions() {
    assert_eq!(prob3().exact_at(1.0).unwrap(), vec![2.0]);
    assert_eq!(prob4().exact_at(1.0).unwrap(), vec![1.0]);
    assert_eq!(prob34().exact_at(0.0).unwrap(), vec![1.0, 0.0]);
    assert_eq!(prob2().exact_at(1.0).unwrap(), vec![0.25]);
    assert_eq!(prob1().exact_at(0.0).unwrap(), vec![1.0]);
}

#[test]
fn registry_holds_the_benchmarks() {
    let registry = builtin_problems();
    let ids: Vec<&str> = registry.ids().collect();
    assert_eq!(ids.len(), 5);
    for id in ["prob1", "prob2", "prob3", "prob4", "prob34"] {
        assert!(registry.get(id).is_some(), "{id}");
    }
    assert_eq!(registry.get("prob1").unwrap().alpha(), 0.6);
    assert_eq!(registry.get("prob2").unwrap().alpha(), 0.5);
    assert_eq!(registry.get("prob34").unwrap().dim(), 2);
    assert_eq!(registry.get("prob1").unwrap().horizon(), 5.0);
}

#[test]
fn user_problems_can_be_registered() {
    let mut registry = ProblemRegistry::builtin();
    let decay = Problem::new("decay", 0.7, vec![2.0], 3.0, Arc::new(|_t, y, out| out[0] = -y[0])).unwrap();
    registry.register(decay.clone()).unwrap();
    assert!(!registry.get("decay").unwrap().has_exact());
    assert!(registry.register(decay).is_err());
    assert!(Problem::new("bad", 1.5, vec![0.0], 1.0, Arc::new(|_t, _y, _o| {})).is_err());
}

#[test]
fn mittag_leffler_special_cases() {
    for alpha in [0.1, 0.5, 0.6, 1.0] {
        assert_eq!(mittag_leffler(alpha, 0.0).unwrap(), 1.0);
    }
    for z in [-0.3, -2.0, -4.9, -5.5, -12.0, -30.0] {
        let e = mittag_leffler(1.0, z).unwrap();
        assert!((e - z.exp()).abs() < 1e-13 * z.exp().max(1e-300) + 1e-300, "z = {z}");
    }
    // E_1/2(-x) = exp(x^2) erfc(x)
    for x in [0.1f64, 1.0, 3.0, 4.5, 5.5] {
        let want = (x * x).exp() * libm::erfc(x);
        let got = mittag_leffler(0.5, -x).unwrap();
        assert!((got - want).abs() < 1e-13, "x = {x}: {got} vs {want}");
    }
    assert!(matches!(mittag_leffler(0.5, 1.0), Err(Error::Unsupported(_))));
    assert!(matches!(mittag_leffler(0.0, -1.0), Err(Error::Domain(_))));
}

#[test]
fn mittag_leffler_branches_agree_near_crossover() {
    for alpha in [0.5, 0.6, 0.7, 0.8, 0.9, 0.95] {
        let ml = MittagLeffler::new(alpha).unwrap();
        for i in 0..=40 {
            let z = -4.0 - 2.0 * i as f64 / 40.0;
            let series = ml.series(z).expect("series available for |z| <= 6");
            let integral = ml.integral(z).unwrap();
            assert!((series - integral).abs() < 1e-12, "alpha {alpha} z {z}: {series} vs {integral}");
        }
    }
}

#[test]
fn small_orders_fall_back_to_the_integral() {
    // the series terms reach ~1e28 here, so only the integral is usable
    let ml = MittagLeffler::new(0.2).unwrap();
    assert!(ml.series(-4.5).is_none());
    assert_eq!(ml.eval(-4.5).unwrap(), ml.integral(-4.5).unwrap());
    let near_zero = ml.series(-0.5).unwrap();
    assert!((near_zero - ml.integral(-0.5).unwrap()).abs() < 1e-12);
}

#[test]
fn mittag_leffler_is_positive_and_decreasing() {
    for alpha in [0.2, 0.5, 0.6, 0.8, 1.0] {
        let ml = MittagLeffler::new(alpha).unwrap();
        let mut prev = 1.0;
        for i in 1..=200 {
            let z = -0.25 * i as f64;
            let v = ml.eval(z).unwrap();
            assert!(v > 0.0, "alpha {alpha} z {z}");
            assert!(v < prev, "alpha {alpha} z {z}: {v} >= {prev}");
            prev = v;
        }
    }
}

proptest! {
    #[test]
    fn mittag_leffler_completely_monotone_samples(alpha in 0.05f64..1.0, a in 0.0f64..40.0, b in 0.0f64..40.0) {
        prop_assume!((a - b).abs() > 1e-6);
        let (near, far) = if a < b { (a, b) } else { (b, a) };
        let ml = MittagLeffler::new(alpha).unwrap();
        let (vn, vf) = (ml.eval(-near).unwrap(), ml.eval(-far).unwrap());
        prop_assert!(vf > 0.0 && vf < vn);
    }
}
