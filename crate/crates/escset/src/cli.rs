//! The `escset` command line.
//!
//! ```text
//! escset orbit  --map <expr> --z0 <complex> [--max-iter N]
//! escset render --map <expr> --window a,b,c,d --res NX,NY --out file.ppm [--overlay-strips] [--csv file.csv]
//! escset strips --family F|G --param <complex> --z <complex> [--form offset|literal]
//! escset verify --suite <name> [--seed S] [suite flags]
//! escset parse  --map <expr>
//! ```
//!
//! Every subcommand accepts `--config path`, the iteration keys
//! (`--max-iter`, `--overflow-log-threshold`, `--escape-real-threshold`,
//! `--degeneracy-eps`, `--generic-escape-radius`) and `--workers N`.
//! Exit codes: 0 success, 1 verification violations, 2 usage or
//! validation error, 3 NaN abort.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};

use escset_core::verify::{
    merge, CompositeLaws, Conjugacy, Disjointness, ForwardInvariance, HalfplaneBound, ImageSuperset, PeriodShift,
    StripContainment,
};
use escset_core::{
    overlay_strips, parse_complex, parse_map, run_orbit, strip_of_form, Classification, Complex64, Engine, EscapeField,
    IterationConfig, MapExpr, SampleSet, SplitMix64, StripFamily, StripForm, Suite, TopFamily, VerificationReport,
    Window,
};

use crate::config::{normalize_key, parse_config};
use crate::format::{render_ppm, report_json, write_field_csv, write_orbit_csv};
use crate::parallel;

pub const SUITES: [&str; 8] = [
    "halfplane-bound",
    "forward-invariance",
    "strip-containment",
    "disjointness",
    "period-shift",
    "composite-laws",
    "image-superset",
    "conjugacy",
];

const KEYS: &[&str] = &[
    "map",
    "map-g",
    "z0",
    "z",
    "family",
    "param",
    "form",
    "window",
    "res",
    "out",
    "csv",
    "overlay-strips",
    "suite",
    "seed",
    "samples",
    "instances",
    "k-max",
    "s",
    "i",
    "j",
    "a",
    "b",
    "workers",
    "max-iter",
    "overflow-log-threshold",
    "escape-real-threshold",
    "degeneracy-eps",
    "generic-escape-radius",
];

const SWITCHES: &[&str] = &["overlay-strips"];

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(String),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("io: {e}"))
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Merged option set: config file first, command-line flags on top.
#[derive(Debug, Default)]
pub struct Options {
    values: BTreeMap<String, String>,
}

impl Options {
    pub fn parse(args: &[String]) -> Result<Options> {
        let mut cli = BTreeMap::new();
        let mut config = None;
        let mut it = args.iter();
        while let Some(arg) = it.next() {
            let Some(flag) = arg.strip_prefix("--") else {
                return Err(usage(format!("unexpected argument '{arg}'")));
            };
            let (key, inline) = match flag.split_once('=') {
                Some((k, v)) => (normalize_key(k), Some(v.to_string())),
                None => (normalize_key(flag), None),
            };
            if key == "config" {
                config = Some(
                    inline
                        .or_else(|| it.next().cloned())
                        .ok_or_else(|| usage("--config needs a path"))?,
                );
                continue;
            }
            check_key(&key)?;
            let value = if SWITCHES.contains(&key.as_str()) {
                inline.unwrap_or_else(|| "true".into())
            } else {
                inline
                    .or_else(|| it.next().cloned())
                    .ok_or_else(|| usage(format!("--{key} needs a value")))?
            };
            cli.insert(key, value);
        }
        let mut values = BTreeMap::new();
        if let Some(path) = config {
            let text = std::fs::read_to_string(&path).map_err(|e| usage(format!("{path}: {e}")))?;
            let parsed = parse_config(&text).map_err(|e| usage(format!("{path}: {e}")))?;
            for key in parsed.keys() {
                check_key(key)?;
            }
            values = parsed;
        }
        values.extend(cli);
        Ok(Options { values })
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| usage(format!("missing --{key}")))
    }

    fn number<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| usage(format!("--{key}: cannot parse '{v}'"))),
        }
    }

    fn switch(&self, key: &str) -> Result<bool> {
        match self.get(key) {
            None | Some("false") => Ok(false),
            Some("true") => Ok(true),
            Some(v) => Err(usage(format!("--{key}: expected true or false, got '{v}'"))),
        }
    }

    fn map(&self, key: &str) -> Result<Option<MapExpr>> {
        self.get(key)
            .map(|text| parse_map(text).map_err(|e| usage(format!("--{key}: {e}"))))
            .transpose()
    }

    fn complex(&self, key: &str) -> Result<Option<Complex64>> {
        self.get(key)
            .map(|text| parse_complex(text).map_err(|e| usage(format!("--{key}: {e}"))))
            .transpose()
    }

    fn window(&self, default: Window) -> Result<Window> {
        let Some(text) = self.get("window") else {
            return Ok(default);
        };
        let v = reals(text, 4).ok_or_else(|| usage(format!("--window: expected a,b,c,d, got '{text}'")))?;
        Window::new(v[0], v[1], v[2], v[3]).ok_or_else(|| usage("--window: need x_min < x_max and y_min < y_max"))
    }

    fn resolution(&self, default: (usize, usize)) -> Result<(usize, usize)> {
        let Some(text) = self.get("res") else {
            return Ok(default);
        };
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        match parts[..] {
            [x, y] => match (x.parse::<usize>(), y.parse::<usize>()) {
                (Ok(nx), Ok(ny)) if nx > 0 && ny > 0 => Ok((nx, ny)),
                _ => Err(usage(format!("--res: expected positive NX,NY, got '{text}'"))),
            },
            _ => Err(usage(format!("--res: expected NX,NY, got '{text}'"))),
        }
    }

    pub fn iteration(&self, default_max_iter: u32) -> Result<IterationConfig> {
        let d = IterationConfig::default();
        let cfg = IterationConfig {
            max_iter: self.number("max-iter", default_max_iter)?,
            overflow_log_threshold: self.number("overflow-log-threshold", d.overflow_log_threshold)?,
            escape_real_threshold: self.number("escape-real-threshold", d.escape_real_threshold)?,
            degeneracy_eps: self.number("degeneracy-eps", d.degeneracy_eps)?,
            generic_escape_radius: self.number("generic-escape-radius", d.generic_escape_radius)?,
            record_orbit: false,
        };
        cfg.validate().map_err(|e| usage(format!("iteration config: {e}")))?;
        Ok(cfg)
    }

    fn workers(&self) -> Result<usize> {
        let w = self.number("workers", parallel::default_workers())?;
        if w == 0 {
            return Err(usage("--workers must be ≥ 1"));
        }
        Ok(w)
    }
}

fn check_key(key: &str) -> Result<()> {
    let key = normalize_key(key);
    if KEYS.contains(&key.as_str()) {
        Ok(())
    } else {
        Err(usage(format!("unknown option '{key}'")))
    }
}

fn reals(text: &str, n: usize) -> Option<Vec<f64>> {
    let v: Vec<f64> = text.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    (v.len() == n && v.iter().all(|x| x.is_finite())).then_some(v)
}

/// Runs the command line; returns the process exit code.
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match args.first().map(String::as_str) {
        None | Some("-h") | Some("--help") | Some("help") => {
            let _ = writeln!(err, "{}", HELP);
            return if args.is_empty() { 2 } else { 0 };
        }
        Some(cmd) => Options::parse(&args[1..]).and_then(|opts| match cmd {
            "orbit" => cmd_orbit(&opts, out),
            "render" => cmd_render(&opts, err),
            "strips" => cmd_strips(&opts, out),
            "verify" => cmd_verify(&opts, out, err),
            "parse" => cmd_parse(&opts, out),
            other => Err(usage(format!("unknown subcommand '{other}'"))),
        }),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Numeric(msg)) => {
            let _ = writeln!(err, "numeric failure: {msg}");
            3
        }
    }
}

const HELP: &str = "usage: escset <orbit|render|strips|verify|parse> [--config path] [options]
  orbit  --map <expr> --z0 <complex> [--max-iter N]
  render --map <expr> --window a,b,c,d --res NX,NY --out file.ppm [--overlay-strips] [--csv file.csv]
  strips --family F|G --param <complex> --z <complex> [--form offset|literal]
  verify --suite <name|all> [--seed S] [--samples N] [--map <expr>] ...
  parse  --map <expr>";

fn cmd_parse(opts: &Options, out: &mut dyn Write) -> Result<i32> {
    let map = opts.map("map")?.ok_or_else(|| usage("missing --map"))?;
    writeln!(out, "{map}")?;
    Ok(0)
}

fn cmd_orbit(opts: &Options, out: &mut dyn Write) -> Result<i32> {
    let map = opts.map("map")?.ok_or_else(|| usage("missing --map"))?;
    let z0 = opts.complex("z0")?.ok_or_else(|| usage("missing --z0"))?;
    let mut cfg = opts.iteration(IterationConfig::default().max_iter)?;
    cfg.record_orbit = true;
    let record = run_orbit(&map, z0, &cfg).map_err(|e| usage(e.to_string()))?;
    write_orbit_csv(&record, out)?;
    if record.classification == (Classification::Undetermined { reason: "nan" }) {
        return Err(CliError::Numeric(format!("orbit of {z0} produced NaN")));
    }
    Ok(0)
}

fn cmd_render(opts: &Options, err: &mut dyn Write) -> Result<i32> {
    let map = opts.map("map")?.ok_or_else(|| usage("missing --map"))?;
    let window = opts
        .window(Window::square(1.0))
        .and_then(|w| match opts.get("window") {
            Some(_) => Ok(w),
            None => Err(usage("missing --window")),
        })?;
    let (nx, ny) = match opts.get("res") {
        Some(_) => opts.resolution((0, 0))?,
        None => return Err(usage("missing --res")),
    };
    let path = opts.require("out")?.to_string();
    let cfg = opts.iteration(IterationConfig::default().max_iter)?;
    let marks_wanted = opts.switch("overlay-strips")?;
    let field = grid(&map, window, nx, ny, &cfg, opts.workers()?)?;

    let marks = if marks_wanted {
        let (family, param) = match map.top_family() {
            Some(TopFamily::F { lambda, .. }) => (StripFamily::F, lambda),
            Some(TopFamily::G { mu, .. }) => (StripFamily::G, mu),
            None => return Err(usage("--overlay-strips needs a family F or G map")),
        };
        Some(overlay_strips(&field, family, param))
    } else {
        None
    };
    let mut w = BufWriter::new(File::create(&path).map_err(|e| usage(format!("{path}: {e}")))?);
    render_ppm(&field, marks.as_ref(), &mut w)?;
    w.flush()?;
    if let Some(csv) = opts.get("csv") {
        let mut w = BufWriter::new(File::create(csv).map_err(|e| usage(format!("{csv}: {e}")))?);
        write_field_csv(&field, &mut w)?;
        w.flush()?;
    }
    let count = |f: fn(&Classification) -> bool| field.cells.iter().filter(|c| f(&c.classification)).count();
    writeln!(
        err,
        "{nx}x{ny}: {} escaping, {} proven, {} bounded, {} undetermined",
        count(Classification::is_escaping),
        count(Classification::is_proven_non_escaping),
        count(|c| matches!(c, Classification::BoundedAtBudget)),
        count(Classification::is_undetermined),
    )?;
    if field
        .cells
        .iter()
        .any(|c| c.classification == (Classification::Undetermined { reason: "nan" }))
    {
        return Err(CliError::Numeric("NaN in field".into()));
    }
    Ok(0)
}

fn cmd_strips(opts: &Options, out: &mut dyn Write) -> Result<i32> {
    let family = match opts.require("family")? {
        "F" | "f" => StripFamily::F,
        "G" | "g" | "F'" | "Fprime" => StripFamily::G,
        other => return Err(usage(format!("--family: expected F or G, got '{other}'"))),
    };
    let param = opts.complex("param")?.ok_or_else(|| usage("missing --param"))?;
    let z = opts.complex("z")?.ok_or_else(|| usage("missing --z"))?;
    let form = match opts.get("form") {
        None | Some("offset") => StripForm::Offset,
        Some("literal") => StripForm::Literal,
        Some(other) => return Err(usage(format!("--form: expected offset or literal, got '{other}'"))),
    };
    match strip_of_form(z, family, param, form) {
        Some(id) => writeln!(out, "k={}", id.k)?,
        None => writeln!(out, "none")?,
    }
    Ok(0)
}

fn grid(
    map: &MapExpr,
    window: Window,
    nx: usize,
    ny: usize,
    cfg: &IterationConfig,
    workers: usize,
) -> Result<EscapeField> {
    parallel::classify_grid(map, window, nx, ny, cfg, workers).map_err(|e| match e {
        parallel::GridError::Invalid(v) => usage(v.to_string()),
        parallel::GridError::Pool(p) => usage(p.to_string()),
    })
}

fn cmd_verify(opts: &Options, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let suite = opts.require("suite")?;
    let names: Vec<&str> = match suite {
        "all" => SUITES.to_vec(),
        name if SUITES.contains(&name) => vec![name],
        other => return Err(usage(format!("unknown suite '{other}'"))),
    };
    let mut failed = false;
    for name in names {
        let report = verify_suite(name, opts)?;
        writeln!(out, "{}", report_json(&report))?;
        let agreement = report
            .agreement_rate()
            .map(|r| format!(", agreement {:.4}", r))
            .unwrap_or_default();
        writeln!(
            err,
            "{}: {} ({} checked, {} skipped, {} violations{agreement})",
            report.suite_name,
            report.verdict.as_str(),
            report.total,
            report.skipped_undetermined,
            report.violations.len()
        )?;
        failed |= !report.passed();
    }
    Ok(if failed { 1 } else { 0 })
}

/// A valid family member with `Re λ ∈ [-5, -0.1]` and `|Re ξ| ∈ [1, 5]`.
pub fn random_family_member(rng: &mut SplitMix64, family: StripFamily) -> MapExpr {
    let p = Complex64::new(rng.uniform(-5.0, -0.1), rng.uniform(-PI, PI));
    let additive_re = rng.uniform(1.0, 5.0);
    let additive_im = rng.uniform(-5.0, 5.0);
    match family {
        StripFamily::F => MapExpr::family_f(p, Complex64::new(additive_re, additive_im)),
        StripFamily::G => MapExpr::family_g(p, Complex64::new(-additive_re, additive_im)),
    }
}

/// `count` samples in the absorbing closed half plane of `family`, with
/// `|Re z| ≤ 100` and `|Im z| ≤ 100`.
pub fn halfplane_samples(seed: u64, count: usize, family: StripFamily) -> SampleSet {
    let mut s = SampleSet::generate(
        seed,
        count,
        Window {
            x_min: 0.0,
            x_max: 100.0,
            y_min: -100.0,
            y_max: 100.0,
        },
    );
    for z in &mut s.points {
        // [0, 100) → (0, 100]
        z.re = 100.0 - z.re;
        if family == StripFamily::G {
            z.re = -z.re;
        }
    }
    if family == StripFamily::G {
        s.window = Window {
            x_min: -100.0,
            x_max: 0.0,
            ..s.window
        };
    }
    s
}

fn suite_error(e: escset_core::SuiteError) -> CliError {
    usage(e.to_string())
}

fn run_par<S: Suite + Sync>(suite: &S, workers: usize) -> Result<VerificationReport> {
    parallel::run_suite(suite, workers).map_err(|e| usage(e.to_string()))
}

fn verify_suite(name: &str, opts: &Options) -> Result<VerificationReport> {
    let seed: u64 = opts.number("seed", 1)?;
    let workers = opts.workers()?;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let f11 = || MapExpr::family_f(c(-1.0, 0.0), c(1.0, 0.0));
    let g11 = || MapExpr::family_g(c(-1.0, 0.0), c(-1.0, 0.0));
    let exp1 = || MapExpr::scaled_exp(c(1.0, 0.0));
    let samples = |default_count: usize, default_window: Window| -> Result<SampleSet> {
        Ok(SampleSet::generate(
            seed,
            opts.number("samples", default_count)?,
            opts.window(default_window)?,
        ))
    };
    let exponent = |key: &str, default: u32| opts.number(key, default);

    match name {
        "halfplane-bound" | "forward-invariance" => {
            let instances: usize = opts.number("instances", 20)?;
            let default_count = if name == "halfplane-bound" { 10_000 } else { 50_000 };
            let count: usize = opts.number("samples", default_count)?;
            let k_max: u32 = opts.number("k-max", 200)?;
            let cfg = opts.iteration(IterationConfig::default().max_iter)?;
            let mut rng = SplitMix64::new(seed);
            let mut jobs = Vec::new();
            match opts.map("map")? {
                Some(map) => {
                    let family = match map.top_family() {
                        Some(TopFamily::F { .. }) => StripFamily::F,
                        Some(TopFamily::G { .. }) => StripFamily::G,
                        None => return Err(suite_error(escset_core::SuiteError::NotAFamily)),
                    };
                    jobs.push((map, halfplane_samples(seed, count, family)));
                }
                None => {
                    let families: &[StripFamily] = if name == "halfplane-bound" {
                        &[StripFamily::F]
                    } else {
                        &[StripFamily::F, StripFamily::G]
                    };
                    for &family in families {
                        for k in 0..instances {
                            let map = random_family_member(&mut rng, family);
                            jobs.push((map, halfplane_samples(seed.wrapping_add(k as u64 + 1), count, family)));
                        }
                    }
                }
            }
            let mut reports = Vec::new();
            for (map, s) in &jobs {
                let report = if name == "halfplane-bound" {
                    run_par(&HalfplaneBound::new(map, s, k_max, cfg).map_err(suite_error)?, workers)?
                } else {
                    run_par(&ForwardInvariance::new(map, s, cfg).map_err(suite_error)?, workers)?
                };
                reports.push(report);
            }
            Ok(merge(name, reports))
        }
        "strip-containment" => {
            let cfg = opts.iteration(500)?;
            let res = opts.resolution((500, 500))?;
            let jobs = match opts.map("map")? {
                Some(map) => {
                    let w = match map.top_family() {
                        Some(TopFamily::G { .. }) => Window {
                            x_min: -5.0,
                            x_max: 30.0,
                            y_min: -20.0,
                            y_max: 20.0,
                        },
                        _ => Window {
                            x_min: -30.0,
                            x_max: 5.0,
                            y_min: -20.0,
                            y_max: 20.0,
                        },
                    };
                    vec![(map, opts.window(w)?)]
                }
                None => vec![
                    (
                        f11(),
                        opts.window(Window {
                            x_min: -30.0,
                            x_max: 5.0,
                            y_min: -20.0,
                            y_max: 20.0,
                        })?,
                    ),
                    (
                        g11(),
                        opts.window(Window {
                            x_min: -5.0,
                            x_max: 30.0,
                            y_min: -20.0,
                            y_max: 20.0,
                        })?,
                    ),
                ],
            };
            let mut reports = Vec::new();
            for (map, window) in &jobs {
                let field = grid(map, *window, res.0, res.1, &cfg, workers)?;
                reports.push(run_par(
                    &StripContainment::new(&field, map).map_err(suite_error)?,
                    workers,
                )?);
            }
            Ok(merge(name, reports))
        }
        "disjointness" => {
            let cfg = opts.iteration(500)?;
            let (nx, ny) = opts.resolution((500, 500))?;
            let window = opts.window(Window::square(30.0))?;
            let f = opts.map("map")?.unwrap_or_else(f11);
            let g = opts.map("map-g")?.unwrap_or_else(g11);
            let field_f = grid(&f, window, nx, ny, &cfg, workers)?;
            let field_g = grid(&g, window, nx, ny, &cfg, workers)?;
            run_par(&Disjointness::new(&field_f, &field_g).map_err(suite_error)?, workers)
        }
        "period-shift" => {
            let cfg = opts.iteration(IterationConfig::default().max_iter)?;
            let f = opts.map("map")?.unwrap_or_else(exp1);
            let s = samples(2000, Window::square(3.0))?;
            let suite = PeriodShift::new(&f, exponent("s", 2)?, &s, Engine::new(cfg), cfg).map_err(suite_error)?;
            run_par(&suite, workers)
        }
        "composite-laws" => {
            let cfg = opts.iteration(IterationConfig::default().max_iter)?;
            let f = opts.map("map")?.unwrap_or_else(exp1);
            let s = samples(2000, Window::square(2.0))?;
            let suite = CompositeLaws::new(&f, exponent("i", 2)?, exponent("j", 1)?, &s, Engine::new(cfg), cfg)
                .map_err(suite_error)?;
            run_par(&suite, workers)
        }
        "image-superset" => {
            let cfg = opts.iteration(IterationConfig::default().max_iter)?;
            let f = opts.map("map")?.unwrap_or_else(f11);
            let s = samples(2000, Window::square(10.0))?;
            let suite = ImageSuperset::new(&f, exponent("j", 2)?, &s, Engine::new(cfg), cfg).map_err(suite_error)?;
            run_par(&suite, workers)
        }
        "conjugacy" => {
            let cfg = opts.iteration(IterationConfig::default().max_iter)?;
            let f = opts.map("map")?.unwrap_or_else(f11);
            let a = opts.complex("a")?.unwrap_or(c(2.0, 0.0));
            let b = opts.complex("b")?.unwrap_or(c(1.0, 0.0));
            let s = samples(
                2000,
                Window {
                    x_min: -10.0,
                    x_max: 2.0,
                    y_min: -8.0,
                    y_max: 8.0,
                },
            )?;
            let suite = Conjugacy::new(&f, a, b, &s, Engine::new(cfg)).map_err(suite_error)?;
            run_par(&suite, workers)
        }
        other => Err(usage(format!("unknown suite '{other}'"))),
    }
}
