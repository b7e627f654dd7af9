//! Acceptance run: one PASS/FAIL line per criterion.

use std::f64::consts::PI;
use std::time::Instant;

use escset::cli::{halfplane_samples, random_family_member};
use escset::parallel::{self, default_workers};
use escset::{read_field_csv, render_ppm, write_field_csv, CsvDefaults};
use escset_core::orbit::AbsorptionRule;
use escset_core::verify::*;
use escset_core::*;

const SEED: u64 = 20_240_601;
/// Relative tolerance of the naive-oracle comparison.
const ORACLE_RTOL: f64 = 1e-12;
/// Wall-time budget of criterion 1, seconds.
const HALFPLANE_BUDGET_S: f64 = 5.0;
/// Soft wall-time target of criterion 10 on 8 cores, seconds.
const FIELD_TARGET_S: f64 = 2.0;

type Criterion = (&'static str, fn() -> (bool, String));

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn f11() -> MapExpr {
    MapExpr::family_f(c(-1.0, 0.0), c(1.0, 0.0))
}

fn g11() -> MapExpr {
    MapExpr::family_g(c(-1.0, 0.0), c(-1.0, 0.0))
}

fn window(x0: f64, x1: f64, y0: f64, y1: f64) -> Window {
    Window::new(x0, x1, y0, y1).unwrap()
}

fn workers() -> usize {
    default_workers().max(2)
}

fn run<S: Suite + Sync>(suite: &S) -> VerificationReport {
    parallel::run_suite(suite, workers()).unwrap()
}

fn grid(map: &MapExpr, w: Window, n: usize, max_iter: u32) -> EscapeField {
    parallel::classify_grid(
        map,
        w,
        n,
        n,
        &IterationConfig::default().with_max_iter(max_iter),
        workers(),
    )
    .unwrap()
}

fn summary(r: &VerificationReport) -> String {
    let agreement = r
        .agreement_rate()
        .map(|a| format!(", agreement {a:.4}"))
        .unwrap_or_default();
    format!(
        "{} checked, {} skipped, {} violations{agreement}",
        r.total,
        r.skipped_undetermined,
        r.violations.len()
    )
}

fn halfplane_bound() -> (bool, String) {
    let start = Instant::now();
    let cfg = IterationConfig::default();
    let mut rng = SplitMix64::new(SEED);
    let mut reports = Vec::new();
    for k in 0..20u64 {
        let f = random_family_member(&mut rng, StripFamily::F);
        let s = halfplane_samples(SEED + k, 10_000, StripFamily::F);
        reports.push(run(&HalfplaneBound::new(&f, &s, 200, cfg).unwrap()));
    }
    let r = merge("halfplane-bound", reports);
    let secs = start.elapsed().as_secs_f64();
    (
        r.violations.is_empty() && r.total == 200_000 && secs <= HALFPLANE_BUDGET_S,
        format!("{}, {secs:.2} s", summary(&r)),
    )
}

fn forward_invariance() -> (bool, String) {
    let cfg = IterationConfig::default();
    let mut rng = SplitMix64::new(SEED ^ 0xF0);
    let mut reports = Vec::new();
    for family in [StripFamily::F, StripFamily::G] {
        for k in 0..20u64 {
            let f = random_family_member(&mut rng, family);
            let s = halfplane_samples(SEED + 100 + k, 50_000, family);
            reports.push(run(&ForwardInvariance::new(&f, &s, cfg).unwrap()));
        }
    }
    let r = merge("forward-invariance", reports);
    (
        r.violations.is_empty() && r.total == 2_000_000,
        format!("{} (10^6 per family)", summary(&r)),
    )
}

fn strip_containment() -> (bool, String) {
    let jobs = [
        (f11(), window(-30.0, 5.0, -20.0, 20.0)),
        (g11(), window(-5.0, 30.0, -20.0, 20.0)),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (map, w) in &jobs {
        let field = grid(map, *w, 500, 500);
        let r = run(&StripContainment::new(&field, map).unwrap());
        let escaping = field.escaping_count();
        ok &= r.violations.is_empty() && escaping >= 1;
        notes.push(format!(
            "{map}: {} violations, {escaping} escaping cells",
            r.violations.len()
        ));
    }
    (ok, notes.join("; "))
}

fn disjointness() -> (bool, String) {
    let w = Window::square(30.0);
    let a = grid(&f11(), w, 500, 500);
    let b = grid(&g11(), w, 500, 500);
    let r = run(&Disjointness::new(&a, &b).unwrap());
    (
        r.violations.is_empty(),
        format!(
            "{}, escaping cells F={} G={}",
            summary(&r),
            a.escaping_count(),
            b.escaping_count()
        ),
    )
}

fn period_shift() -> (bool, String) {
    let cfg = IterationConfig::default();
    let f = MapExpr::scaled_exp(c(1.0, 0.0));
    let s = SampleSet::generate(SEED, 2000, Window::square(3.0));
    let suite = PeriodShift::new(&f, 2, &s, Engine::new(cfg), cfg).unwrap();
    let period_ok = suite.shifted_map().to_string() == format!("shift(iter(exp(1+0i), 2), 0+{}i)", 2.0 * PI);
    let r = run(&suite);
    (r.violations.is_empty() && period_ok, summary(&r))
}

fn composite_laws() -> (bool, String) {
    let cfg = IterationConfig::default();
    let f = MapExpr::scaled_exp(c(1.0, 0.0));
    let s = SampleSet::generate(SEED, 2000, Window::square(2.0));
    let r = run(&CompositeLaws::new(&f, 2, 1, &s, Engine::new(cfg), cfg).unwrap());
    let rate = r.agreement_rate().unwrap();
    (r.violations.is_empty() && rate >= AGREEMENT_THRESHOLD, summary(&r))
}

fn image_superset() -> (bool, String) {
    let cfg = IterationConfig::default();
    let s = SampleSet::generate(SEED, 2000, Window::square(10.0));
    let f = f11();
    let r = run(&ImageSuperset::new(&f, 2, &s, Engine::new(cfg), cfg).unwrap());
    (r.violations.is_empty(), summary(&r))
}

fn conjugacy() -> (bool, String) {
    let cfg = IterationConfig::default();
    let s = SampleSet::generate(SEED, 2000, window(-10.0, 2.0, -8.0, 8.0));
    let f = f11();
    let r = run(&Conjugacy::new(&f, c(2.0, 0.0), c(1.0, 0.0), &s, Engine::new(cfg)).unwrap());
    let rate = r.agreement_rate().unwrap();
    (r.violations.is_empty() && rate >= AGREEMENT_THRESHOLD, summary(&r))
}

fn naive(map: &MapExpr, z: Complex64) -> Complex64 {
    match map {
        MapExpr::FamilyF { lambda, xi } => (-z + lambda).exp() + xi,
        MapExpr::FamilyG { mu, zeta } => (z + mu).exp() + zeta,
        MapExpr::ScaledExp { lambda } => (lambda * z).exp(),
        MapExpr::Iterate { base, s } => (0..*s).fold(z, |w, _| naive(base, w)),
        MapExpr::Shift { base, c } => naive(base, z) + c,
        MapExpr::Compose { outer, inner } => naive(outer, naive(inner, z)),
        MapExpr::Conjugate { a, b, base } => a * naive(base, (z - b) / a) + b,
    }
}

fn oracle_equivalence() -> (bool, String) {
    let cfg = IterationConfig {
        max_iter: 100,
        record_orbit: true,
        ..IterationConfig::default()
    };
    let seeds = SampleSet::generate(SEED, 10_000, Window::square(10.0));
    let maps = [f11(), g11(), MapExpr::scaled_exp(c(1.0, 0.0))];
    let (mut compared, mut worst, mut bad) = (0usize, 0f64, 0usize);
    for map in &maps {
        for &z0 in &seeds.points {
            let rec = run_orbit(map, z0, &cfg).unwrap();
            let mut z = z0;
            for p in rec.points.unwrap().iter().skip(1) {
                z = naive(map, z);
                if z.norm().is_nan() || z.norm() > 1e100 {
                    break;
                }
                let Some(w) = p.as_complex() else { break };
                compared += 1;
                let rel = if w == z { 0.0 } else { (w - z).norm() / z.norm() };
                worst = worst.max(rel);
                bad += (rel > ORACLE_RTOL) as usize;
            }
        }
    }
    (
        bad == 0,
        format!("{compared} iterates over 3 maps × 10^4 seeds, worst relative error {worst:.3e}"),
    )
}

fn determinism() -> (bool, String) {
    let cfg = IterationConfig::default().with_max_iter(250);
    let w = window(-30.0, 5.0, -20.0, 20.0);
    let many = default_workers().max(4);
    let start = Instant::now();
    let single = parallel::classify_grid(&f11(), w, 800, 800, &cfg, 1).unwrap();
    let t1 = start.elapsed().as_secs_f64();
    let start = Instant::now();
    let multi = parallel::classify_grid(&f11(), w, 800, 800, &cfg, many).unwrap();
    let tw = start.elapsed().as_secs_f64();
    let mut a = Vec::new();
    let mut b = Vec::new();
    render_ppm(&single, None, &mut a).unwrap();
    render_ppm(&multi, None, &mut b).unwrap();
    let target = if tw <= FIELD_TARGET_S { "within" } else { "over" };
    (
        single == multi && a == b,
        format!(
            "1 worker {t1:.2} s, {many} workers {tw:.2} s on {} cores ({target} the {FIELD_TARGET_S} s soft target, informational)",
            default_workers()
        ),
    )
}

fn golden_outputs() -> (bool, String) {
    let mut field = EscapeField::filled(Window::square(1.0), 2, 1, Classification::BoundedAtBudget);
    field.set(0, 0, Classification::Escaping { step: 0 });
    field.set(
        1,
        0,
        Classification::NonEscapingProven {
            rule: AbsorptionRule::RightHalfPlaneF,
            step: 0,
        },
    );
    let mut ppm = Vec::new();
    render_ppm(&field, None, &mut ppm).unwrap();
    let ppm_ok = ppm == b"P6\n2 1\n255\n\x08\x00\x40\x00\x00\x00";

    let w = window(-6.0, 2.0, -4.0, 4.0);
    let field = grid(&f11(), w, 50, 100);
    let mut first = Vec::new();
    write_field_csv(&field, &mut first).unwrap();
    let defaults = CsvDefaults {
        window: w,
        rule: AbsorptionRule::RightHalfPlaneF,
        reason: "nan",
    };
    let back = read_field_csv(&first[..], defaults).unwrap();
    let mut second = Vec::new();
    write_field_csv(&back, &mut second).unwrap();
    let cells_ok = field.cells.iter().zip(&back.cells).all(|(a, b)| {
        a.classification.variant_name() == b.classification.variant_name()
            && a.classification.step() == b.classification.step()
    });
    (
        ppm_ok && first == second && cells_ok && back.same_grid(&field),
        format!("2x1 PPM {} bytes, CSV round trip {} bytes", ppm.len(), first.len()),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("half-plane bound", halfplane_bound),
        ("forward invariance", forward_invariance),
        ("strip containment", strip_containment),
        ("disjointness", disjointness),
        ("period shift", period_shift),
        ("composite laws", composite_laws),
        ("image superset", image_superset),
        ("conjugacy", conjugacy),
        ("naive oracle equivalence", oracle_equivalence),
        ("determinism and performance", determinism),
        ("golden outputs", golden_outputs),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let (ok, detail) = check();
        failed += !ok as usize;
        println!(
            "criterion {:>2} {:<28} {}  {detail}",
            n + 1,
            name,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
