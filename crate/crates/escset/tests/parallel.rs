use escset::parallel;
use escset_core::verify::Conjugacy;
use escset_core::*;
use proptest::prelude::*;

fn f11() -> MapExpr {
    MapExpr::family_f(Complex64::new(-1.0, 0.0), Complex64::new(1.0, 0.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn grid_is_independent_of_workers(workers in 1usize..6, nx in 1usize..40, ny in 1usize..40) {
        let w = Window::new(-12.0, 3.0, -7.0, 7.0).unwrap();
        let cfg = IterationConfig::default().with_max_iter(120);
        let seq = classify_grid(&f11(), w, nx, ny, &cfg).unwrap();
        let par = parallel::classify_grid(&f11(), w, nx, ny, &cfg, workers).unwrap();
        prop_assert_eq!(seq, par);
    }

    #[test]
    fn suite_report_is_independent_of_workers(workers in 1usize..6, seed in any::<u64>()) {
        let s = SampleSet::generate(seed, 300, Window::new(-10.0, 2.0, -8.0, 8.0).unwrap());
        let f = f11();
        let suite = Conjugacy::new(&f, Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0), &s, Engine::default()).unwrap();
        prop_assert_eq!(run_suite(&suite), parallel::run_suite(&suite, workers).unwrap());
    }
}

#[test]
fn invalid_map_is_rejected() {
    let bad = MapExpr::family_g(Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0));
    assert!(parallel::classify_grid(&bad, Window::square(1.0), 4, 4, &IterationConfig::default(), 2).is_err());
}
