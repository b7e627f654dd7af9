use std::f64::consts::PI;

use escset_core::*;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cplx(re: std::ops::Range<f64>, im: std::ops::Range<f64>) -> impl Strategy<Value = Complex64> {
    (re, im).prop_map(|(a, b)| c(a, b))
}

fn family_f() -> impl Strategy<Value = MapExpr> {
    (cplx(-5.0..-0.1, -3.0..3.0), cplx(1.0..5.0, -3.0..3.0)).prop_map(|(l, x)| MapExpr::family_f(l, x))
}

fn family_g() -> impl Strategy<Value = MapExpr> {
    (cplx(-5.0..-0.1, -3.0..3.0), cplx(-5.0..-1.0, -3.0..3.0)).prop_map(|(m, z)| MapExpr::family_g(m, z))
}

fn nonzero() -> impl Strategy<Value = Complex64> {
    cplx(-3.0..3.0, -3.0..3.0).prop_filter("nonzero", |z| z.norm() > 1e-3)
}

fn map_expr() -> impl Strategy<Value = MapExpr> {
    let leaf = prop_oneof![family_f(), family_g(), nonzero().prop_map(MapExpr::scaled_exp)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), 1u32..4).prop_map(|(m, s)| m.iterate(s)),
            (inner.clone(), cplx(-5.0..5.0, -5.0..5.0)).prop_map(|(m, k)| m.shift(k)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.compose(b)),
            (inner, nonzero(), cplx(-2.0..2.0, -2.0..2.0)).prop_map(|(m, a, b)| m.conjugate(a, b)),
        ]
    })
}

fn cfg() -> IterationConfig {
    IterationConfig::default()
}

fn image(map: &MapExpr, z: Complex64) -> Option<Complex64> {
    eval(map, ExtendedPoint::finite(z), &cfg()).ok()?.as_complex()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn display_parses_back(m in map_expr()) {
        let text = m.to_string();
        prop_assert_eq!(parse_map(&text).unwrap(), m);
    }

    #[test]
    fn family_f_periodicity(f in family_f(), z in cplx(-5.0..5.0, -5.0..5.0)) {
        let a = image(&f, z).unwrap();
        let b = image(&f, z + c(0.0, 2.0 * PI)).unwrap();
        prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn identity_conjugation_is_bitwise(m in map_expr(), z in cplx(-4.0..4.0, -4.0..4.0)) {
        let g = m.clone().conjugate(c(1.0, 0.0), c(0.0, 0.0));
        let p = eval(&m, ExtendedPoint::finite(z), &cfg());
        let q = eval(&g, ExtendedPoint::finite(z), &cfg());
        match (p, q) {
            (Ok(p), Ok(q)) if !p.has_nan() => prop_assert_eq!(p, q),
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            _ => {}
        }
    }

    #[test]
    fn iterate_is_repeated_eval(m in map_expr(), s in 1u32..4, z in cplx(-2.0..2.0, -2.0..2.0)) {
        let direct = eval(&m.clone().iterate(s), ExtendedPoint::finite(z), &cfg());
        let mut p = Ok(ExtendedPoint::finite(z));
        for _ in 0..s {
            p = p.and_then(|q| eval(&m, q, &cfg()));
        }
        match (direct, p) {
            (Ok(a), Ok(b)) if !a.has_nan() => prop_assert_eq!(a, b),
            (Err(a), Err(b)) => prop_assert_eq!(a, b),
            _ => {}
        }
    }

    #[test]
    fn right_half_plane_maps_inside(f in family_f(), z in cplx(0.0..200.0, -200.0..200.0)) {
        prop_assert!(image(&f, z).unwrap().re > 0.0);
    }

    #[test]
    fn left_half_plane_maps_inside(g in family_g(), z in cplx(-200.0..0.0, -200.0..200.0)) {
        prop_assert!(image(&g, z).unwrap().re < 0.0);
    }

    #[test]
    fn strip_matches_sign_test(z in cplx(-50.0..50.0, -50.0..50.0), lambda in cplx(-5.0..-0.1, -4.0..4.0)) {
        for family in [StripFamily::F, StripFamily::G] {
            let shifted = if family == StripFamily::F { z.im - lambda.im } else { z.im + lambda.im };
            prop_assume!(shifted.cos().abs() > 1e-9);
            prop_assert_eq!(strip_of(z, family, lambda).is_some(), strip::in_strip_by_sign(z, family, lambda));
        }
    }

    #[test]
    fn strips_are_two_pi_periodic(z in cplx(-50.0..-1e-6, -50.0..50.0), lambda in cplx(-5.0..-0.1, -4.0..4.0)) {
        prop_assume!((z.im - lambda.im).cos().abs() > 1e-9);
        let here = strip_of(z, StripFamily::F, lambda);
        let up = strip_of(z + c(0.0, 2.0 * PI), StripFamily::F, lambda);
        prop_assert_eq!(here.map(|s| s.k + 1), up.map(|s| s.k));
    }

    #[test]
    fn larger_budget_keeps_decided_verdicts(m in prop_oneof![family_f(), family_g(), nonzero().prop_map(MapExpr::scaled_exp)],
                                            z in cplx(-20.0..20.0, -20.0..20.0), n in 1u32..60) {
        let small = classify(&m, z, &cfg().with_max_iter(n)).unwrap();
        let large = classify(&m, z, &cfg().with_max_iter(n + 40)).unwrap();
        if small != Classification::BoundedAtBudget {
            prop_assert_eq!(small, large);
        }
    }

    #[test]
    fn orbit_record_matches_classify(m in map_expr(), z in cplx(-5.0..5.0, -5.0..5.0)) {
        let cfg = IterationConfig { max_iter: 60, record_orbit: true, ..cfg() };
        let rec = run_orbit(&m, z, &cfg).unwrap();
        prop_assert_eq!(rec.classification, classify(&m, z, &cfg).unwrap());
        prop_assert_eq!(rec.points.unwrap().len(), rec.steps_taken as usize + 1);
        prop_assert!(rec.steps_taken <= cfg.max_iter);
    }
}

#[test]
fn strip_sign_test_on_a_million_points() {
    let lambda = c(-1.0, 0.7);
    let s = SampleSet::generate(31, 1_000_000, Window::square(60.0));
    let mut compared = 0;
    for &z in &s.points {
        if (z.im - lambda.im).cos().abs() <= 1e-9 {
            continue;
        }
        compared += 1;
        assert_eq!(
            strip_of(z, StripFamily::F, lambda).is_some(),
            strip::in_strip_by_sign(z, StripFamily::F, lambda),
            "{z}"
        );
    }
    assert!(compared > 999_000);
}
