//! Sampling-based verification suites.
//!
//! Each suite is a list of independent checks, one per sample (or grid
//! cell). [`run_suite`] runs them in order; a parallel runner only needs
//! [`Suite::check`] and [`finish`], which reduces outcomes in index order so
//! reports do not depend on scheduling.
//!
//! Verdict comparisons follow one convention throughout. A pair of
//! classifications is *comparable* when neither is Undetermined and at
//! least one is Escaping or NonEscapingProven; incomparable pairs are
//! counted as skipped. Escaping against NonEscapingProven is a rigorous
//! conflict and always a violation. Comparable pairs otherwise agree when
//! both or neither say Escaping; suites with an agreement threshold fail
//! when the agreeing fraction drops below it.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::ConstraintViolation;
use crate::eval::eval;
use crate::field::EscapeField;
use crate::map::{Literal, MapExpr, TopFamily};
use crate::orbit::{Classification, Classifier, IterationConfig};
use crate::point::ExtendedPoint;
use crate::sample::SampleSet;
use crate::strip::{strip_of, StripFamily};

/// Heuristic-vs-heuristic agreement required by the agreement suites.
pub const AGREEMENT_THRESHOLD: f64 = 0.99;

/// Slack on the half-plane bound `|f^k(z)| ≤ 1 + |ξ|`.
pub const HALFPLANE_SLACK: f64 = 1e-9;

/// Relative tolerance of the period-shift orbit identity.
pub const PERIOD_SHIFT_RTOL: f64 = 1e-6;

/// Modulus at which the period-shift orbit comparison stops.
pub const PERIOD_SHIFT_MODULUS_CAP: f64 = 1e8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Sample or cell index the violation came from.
    pub index: usize,
    pub input: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub suite_name: String,
    pub total: usize,
    pub violations: Vec<Violation>,
    pub skipped_undetermined: usize,
    /// `(agreeing, compared)` for suites that track heuristic agreement.
    pub agreement: Option<(usize, usize)>,
    pub verdict: Verdict,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn agreement_rate(&self) -> Option<f64> {
        self.agreement
            .map(|(a, n)| if n == 0 { 1.0 } else { a as f64 / n as f64 })
    }
}

/// What one check produced.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SampleOutcome {
    pub skipped: bool,
    pub violations: Vec<Violation>,
    pub agreed: usize,
    pub compared: usize,
}

impl SampleOutcome {
    pub fn ok() -> Self {
        SampleOutcome::default()
    }

    pub fn skip() -> Self {
        SampleOutcome {
            skipped: true,
            ..SampleOutcome::default()
        }
    }

    fn violation(
        &mut self,
        index: usize,
        input: impl Into<String>,
        expected: impl Into<String>,
        observed: impl Into<String>,
    ) {
        self.violations.push(Violation {
            index,
            input: input.into(),
            expected: expected.into(),
            observed: observed.into(),
        });
    }

    /// Applies the comparison convention to one pair of verdicts.
    fn compare(&mut self, index: usize, input: &str, label: &str, a: &Classification, b: &Classification) -> bool {
        if !comparable(a, b) {
            return false;
        }
        if a.conflicts_with(b) {
            self.violation(
                index,
                input,
                format!("{label}: consistent verdicts"),
                format!("{} vs {}", Describe(a), Describe(b)),
            );
        }
        self.compared += 1;
        if a.is_escaping() == b.is_escaping() {
            self.agreed += 1;
        }
        true
    }
}

pub fn comparable(a: &Classification, b: &Classification) -> bool {
    !a.is_undetermined() && !b.is_undetermined() && (a.is_determined() || b.is_determined())
}

/// A verification suite: `len()` independent checks.
pub trait Suite {
    fn name(&self) -> &str;
    fn len(&self) -> usize;
    fn check(&self, index: usize) -> SampleOutcome;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Minimum agreeing fraction, for suites that compare heuristic verdicts.
    fn agreement_threshold(&self) -> Option<f64> {
        None
    }
}

/// Runs every check of `suite` in index order on the calling thread.
pub fn run_suite<S: Suite + ?Sized>(suite: &S) -> VerificationReport {
    finish(suite, (0..suite.len()).map(|i| suite.check(i)))
}

/// Reduces per-check outcomes (in index order) into a report.
pub fn finish<S: Suite + ?Sized>(suite: &S, outcomes: impl IntoIterator<Item = SampleOutcome>) -> VerificationReport {
    let mut violations = Vec::new();
    let mut skipped = 0;
    let mut total = 0;
    let (mut agreed, mut compared) = (0, 0);
    for o in outcomes {
        total += 1;
        skipped += o.skipped as usize;
        agreed += o.agreed;
        compared += o.compared;
        violations.extend(o.violations);
    }
    violations.sort_by_key(|v| v.index);
    let agreement = suite.agreement_threshold().map(|_| (agreed, compared));
    if let Some(threshold) = suite.agreement_threshold() {
        let rate = if compared == 0 {
            1.0
        } else {
            agreed as f64 / compared as f64
        };
        if rate < threshold {
            violations.push(Violation {
                index: total,
                input: String::from("aggregate"),
                expected: format!("heuristic agreement ≥ {threshold}"),
                observed: format!("{agreed}/{compared} = {rate:.4}"),
            });
        }
    }
    let verdict = if violations.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    VerificationReport {
        suite_name: suite.name().to_string(),
        total,
        violations,
        skipped_undetermined: skipped,
        agreement,
        verdict,
    }
}

/// Concatenates reports of one suite run on several inputs. Violation
/// indices are offset so they stay unique and ordered.
pub fn merge(suite_name: &str, reports: impl IntoIterator<Item = VerificationReport>) -> VerificationReport {
    let mut out = VerificationReport {
        suite_name: suite_name.to_string(),
        total: 0,
        violations: Vec::new(),
        skipped_undetermined: 0,
        agreement: None,
        verdict: Verdict::Pass,
    };
    for r in reports {
        let offset = out.total;
        out.violations.extend(r.violations.into_iter().map(|v| Violation {
            index: v.index + offset,
            ..v
        }));
        out.total += r.total;
        out.skipped_undetermined += r.skipped_undetermined;
        if let Some((a, n)) = r.agreement {
            let (pa, pn) = out.agreement.unwrap_or((0, 0));
            out.agreement = Some((pa + a, pn + n));
        }
        if r.verdict == Verdict::Fail {
            out.verdict = Verdict::Fail;
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub enum SuiteError {
    InvalidMap(ConstraintViolation),
    /// The suite needs a bare family F or G member.
    NotAFamily,
    /// Period-shift needs a structurally known period.
    NoKnownPeriod,
    /// Two fields must share window and resolution.
    DimensionMismatch,
    /// Iterate exponents must be at least one.
    ZeroExponent,
    /// Conjugation by `a = 0`.
    DegenerateConjugacy,
}

impl fmt::Display for SuiteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuiteError::InvalidMap(v) => v.fmt(f),
            SuiteError::NotAFamily => f.write_str("map must be a family F or G member"),
            SuiteError::NoKnownPeriod => f.write_str("no-known-period"),
            SuiteError::DimensionMismatch => f.write_str("fields differ in window or resolution"),
            SuiteError::ZeroExponent => f.write_str("iterate exponents must be ≥ 1"),
            SuiteError::DegenerateConjugacy => f.write_str("conjugacy needs a ≠ 0"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for SuiteError {}

impl From<ConstraintViolation> for SuiteError {
    fn from(v: ConstraintViolation) -> Self {
        SuiteError::InvalidMap(v)
    }
}

/// Display adapter for classifications in violation records.
pub struct Describe<'a>(pub &'a Classification);

impl fmt::Display for Describe<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Classification::Escaping { step } => write!(f, "Escaping@{step}"),
            Classification::NonEscapingProven { rule, step } => write!(f, "NonEscapingProven({rule:?})@{step}"),
            Classification::BoundedAtBudget => f.write_str("BoundedAtBudget"),
            Classification::Undetermined { reason } => write!(f, "Undetermined({reason})"),
        }
    }
}

fn show(z: Complex64) -> String {
    Literal(z).to_string()
}

fn show_point(p: &ExtendedPoint) -> String {
    match *p {
        ExtendedPoint::Finite { re, im } => show(Complex64::new(re, im)),
        ExtendedPoint::Directed { log_modulus, angle } => format!("directed(log|z|={log_modulus}, arg={angle})"),
    }
}

fn family_of(map: &MapExpr) -> Result<TopFamily, SuiteError> {
    map.validate()?;
    map.top_family().ok_or(SuiteError::NotAFamily)
}

// ---------------------------------------------------------------------------

/// `|f^k(z)| ≤ 1 + |ξ|` (resp. `1 + |ζ|`) for samples in the absorbing
/// closed half plane and every `k ≤ k_max`.
pub struct HalfplaneBound<'a> {
    map: &'a MapExpr,
    family: TopFamily,
    samples: &'a SampleSet,
    k_max: u32,
    cfg: IterationConfig,
}

impl<'a> HalfplaneBound<'a> {
    pub fn new(map: &'a MapExpr, samples: &'a SampleSet, k_max: u32, cfg: IterationConfig) -> Result<Self, SuiteError> {
        let family = family_of(map)?;
        Ok(HalfplaneBound {
            map,
            family,
            samples,
            k_max,
            cfg,
        })
    }
}

impl Suite for HalfplaneBound<'_> {
    fn name(&self) -> &str {
        "halfplane-bound"
    }

    fn len(&self) -> usize {
        self.samples.points.len()
    }

    fn check(&self, index: usize) -> SampleOutcome {
        let z = self.samples.points[index];
        let (inside, additive) = match self.family {
            TopFamily::F { xi, .. } => (z.re >= 0.0, xi),
            TopFamily::G { zeta, .. } => (z.re <= 0.0, zeta),
        };
        if !inside {
            return SampleOutcome::skip();
        }
        let bound = 1.0 + additive.norm() + HALFPLANE_SLACK;
        let mut out = SampleOutcome::ok();
        let mut p = ExtendedPoint::finite(z);
        for k in 1..=self.k_max {
            p = match eval(self.map, p, &self.cfg) {
                Ok(p) => p,
                Err(e) => {
                    out.violation(index, show(z), format!("|f^{k}(z)| ≤ {bound}"), e.reason());
                    break;
                }
            };
            let within = p.as_complex().is_some_and(|w| w.norm() <= bound);
            if !within {
                out.violation(index, show(z), format!("|f^{k}(z)| ≤ {bound}"), show_point(&p));
                break;
            }
        }
        out
    }
}

/// The absorbing half plane is mapped into its interior: `Re z ≥ 0 ⇒
/// Re f(z) > 0` for F, `Re z ≤ 0 ⇒ Re f(z) < 0` for G.
pub struct ForwardInvariance<'a> {
    map: &'a MapExpr,
    family: TopFamily,
    samples: &'a SampleSet,
    cfg: IterationConfig,
}

impl<'a> ForwardInvariance<'a> {
    pub fn new(map: &'a MapExpr, samples: &'a SampleSet, cfg: IterationConfig) -> Result<Self, SuiteError> {
        let family = family_of(map)?;
        Ok(ForwardInvariance {
            map,
            family,
            samples,
            cfg,
        })
    }
}

impl Suite for ForwardInvariance<'_> {
    fn name(&self) -> &str {
        "forward-invariance"
    }

    fn len(&self) -> usize {
        self.samples.points.len()
    }

    fn check(&self, index: usize) -> SampleOutcome {
        let z = self.samples.points[index];
        let is_f = matches!(self.family, TopFamily::F { .. });
        let inside = if is_f { z.re >= 0.0 } else { z.re <= 0.0 };
        if !inside {
            return SampleOutcome::skip();
        }
        let mut out = SampleOutcome::ok();
        let image = eval(self.map, ExtendedPoint::finite(z), &self.cfg);
        let holds = match image {
            Ok(ExtendedPoint::Finite { re, .. }) => {
                if is_f {
                    re > 0.0
                } else {
                    re < 0.0
                }
            }
            _ => false,
        };
        if !holds {
            let expected = if is_f { "Re f(z) > 0" } else { "Re f(z) < 0" };
            let observed = match image {
                Ok(p) => show_point(&p),
                Err(e) => e.reason().to_string(),
            };
            out.violation(index, show(z), expected, observed);
        }
        out
    }
}

/// Every escaping cell lies inside one of the family's strips.
pub struct StripContainment<'a> {
    field: &'a EscapeField,
    family: StripFamily,
    param: Complex64,
}

impl<'a> StripContainment<'a> {
    pub fn new(field: &'a EscapeField, map: &MapExpr) -> Result<Self, SuiteError> {
        let (family, param) = match family_of(map)? {
            TopFamily::F { lambda, .. } => (StripFamily::F, lambda),
            TopFamily::G { mu, .. } => (StripFamily::G, mu),
        };
        Ok(StripContainment { field, family, param })
    }
}

impl Suite for StripContainment<'_> {
    fn name(&self) -> &str {
        "strip-containment"
    }

    fn len(&self) -> usize {
        self.field.cells.len()
    }

    fn check(&self, index: usize) -> SampleOutcome {
        let cell = &self.field.cells[index];
        let (i, j) = (index % self.field.nx, index / self.field.nx);
        if cell.classification.is_undetermined() {
            return SampleOutcome::skip();
        }
        let mut out = SampleOutcome::ok();
        if cell.classification.is_escaping() {
            let z = self.field.center(i, j);
            if strip_of(z, self.family, self.param).is_none() {
                out.violation(
                    index,
                    show(z),
                    "escaping cell inside a strip",
                    Describe(&cell.classification).to_string(),
                );
            }
        }
        out
    }
}

/// No cell escapes under both an F member and a G member.
pub struct Disjointness<'a> {
    field_f: &'a EscapeField,
    field_g: &'a EscapeField,
}

impl<'a> Disjointness<'a> {
    pub fn new(field_f: &'a EscapeField, field_g: &'a EscapeField) -> Result<Self, SuiteError> {
        if !field_f.same_grid(field_g) || field_f.cells.len() != field_g.cells.len() {
            return Err(SuiteError::DimensionMismatch);
        }
        Ok(Disjointness { field_f, field_g })
    }
}

impl Suite for Disjointness<'_> {
    fn name(&self) -> &str {
        "disjointness"
    }

    fn len(&self) -> usize {
        self.field_f.cells.len()
    }

    fn check(&self, index: usize) -> SampleOutcome {
        let a = &self.field_f.cells[index].classification;
        let b = &self.field_g.cells[index].classification;
        if a.is_undetermined() || b.is_undetermined() {
            return SampleOutcome::skip();
        }
        let mut out = SampleOutcome::ok();
        if a.is_escaping() && b.is_escaping() {
            let (i, j) = (index % self.field_f.nx, index / self.field_f.nx);
            out.violation(
                index,
                show(self.field_f.center(i, j)),
                "escaping in at most one field",
                "escaping in both",
            );
        }
        out
    }
}

/// `g = f^s + c` with `c` a period of `f`: orbit identity
/// `g^n = f^{ns} + c` and consistent verdicts for `f` and `g`.
pub struct PeriodShift<'a, C> {
    f: &'a MapExpr,
    f_s: MapExpr,
    g: MapExpr,
    c: Complex64,
    samples: &'a SampleSet,
    classifier: C,
    cfg: IterationConfig,
}

impl<'a, C: Classifier> PeriodShift<'a, C> {
    pub fn new(
        f: &'a MapExpr,
        s: u32,
        samples: &'a SampleSet,
        classifier: C,
        cfg: IterationConfig,
    ) -> Result<Self, SuiteError> {
        f.validate()?;
        if s == 0 {
            return Err(SuiteError::ZeroExponent);
        }
        let c = f.period_of().ok_or(SuiteError::NoKnownPeriod)?;
        let f_s = f.clone().iterate(s);
        let g = f_s.clone().shift(c);
        Ok(PeriodShift {
            f,
            f_s,
            g,
            c,
            samples,
            classifier,
            cfg,
        })
    }

    pub fn shifted_map(&self) -> &MapExpr {
        &self.g
    }
}

impl<C: Classifier> Suite for PeriodShift<'_, C> {
    fn name(&self) -> &str {
        "period-shift"
    }

    fn len(&self) -> usize {
        self.samples.points.len()
    }

    fn check(&self, index: usize) -> SampleOutcome {
        let z = self.samples.points[index];
        let input = show(z);
        let mut out = SampleOutcome::ok();

        let mut pf = ExtendedPoint::finite(z);
        let mut pg = pf;
        for n in 1..=self.cfg.max_iter {
            let (Ok(nf), Ok(ng)) = (eval(&self.f_s, pf, &self.cfg), eval(&self.g, pg, &self.cfg)) else {
                break;
            };
            let (Some(wf), Some(wg)) = (nf.as_complex(), ng.as_complex()) else {
                break;
            };
            let shifted = wf + self.c;
            if shifted.norm() > PERIOD_SHIFT_MODULUS_CAP || wg.norm() > PERIOD_SHIFT_MODULUS_CAP {
                break;
            }
            if (wg - shifted).norm() > PERIOD_SHIFT_RTOL * (1.0 + wf.norm()) {
                out.violation(
                    index,
                    input.clone(),
                    format!("g^{n}(z) = f^(ns)(z) + c = {}", show(shifted)),
                    show(wg),
                );
                break;
            }
            pf = nf;
            pg = ng;
        }

        let cf = self.classifier.classify(self.f, z);
        let cg = self.classifier.classify(&self.g, z);
        if !out.compare(index, &input, "f vs g", &cf, &cg) {
            out.skipped = true;
        }
        out
    }
}

/// Commuting pair `(f, g = f^j)`: subset law `I(f∘g) ⊂ I(f) ∪ I(g)`, iterate
/// law `I(f^i∘g^j) = I(f∘g)` and invariance of `I(f∘g)` under `g`.
pub struct CompositeLaws<'a, C> {
    f: &'a MapExpr,
    g: MapExpr,
    fg: MapExpr,
    fi_gj: MapExpr,
    samples: &'a SampleSet,
    classifier: C,
    cfg: IterationConfig,
}

impl<'a, C: Classifier> CompositeLaws<'a, C> {
    pub fn new(
        f: &'a MapExpr,
        i: u32,
        j: u32,
        samples: &'a SampleSet,
        classifier: C,
        cfg: IterationConfig,
    ) -> Result<Self, SuiteError> {
        f.validate()?;
        if i == 0 || j == 0 {
            return Err(SuiteError::ZeroExponent);
        }
        let g = f.clone().iterate(j);
        let fg = f.clone().compose(g.clone());
        let fi_gj = f.clone().iterate(i).compose(g.clone().iterate(j));
        Ok(CompositeLaws {
            f,
            g,
            fg,
            fi_gj,
            samples,
            classifier,
            cfg,
        })
    }
}

impl<C: Classifier> Suite for CompositeLaws<'_, C> {
    fn name(&self) -> &str {
        "composite-laws"
    }

    fn len(&self) -> usize {
        self.samples.points.len()
    }

    fn agreement_threshold(&self) -> Option<f64> {
        Some(AGREEMENT_THRESHOLD)
    }

    fn check(&self, index: usize) -> SampleOutcome {
        let z = self.samples.points[index];
        let input = show(z);
        let mut out = SampleOutcome::ok();
        let c_fg = self.classifier.classify(&self.fg, z);

        // iterate law
        let c_h = self.classifier.classify(&self.fi_gj, z);
        let compared = out.compare(index, &input, "f∘g vs f^i∘g^j", &c_fg, &c_h);
        out.skipped = !compared;

        if c_fg.is_escaping() {
            // subset law
            let c_f = self.classifier.classify(self.f, z);
            let c_g = self.classifier.classify(&self.g, z);
            if !(c_f.is_escaping() || c_g.is_escaping()) {
                if c_f.is_proven_non_escaping() && c_g.is_proven_non_escaping() {
                    out.violation(
                        index,
                        input.clone(),
                        "I(f∘g) ⊂ I(f) ∪ I(g)",
                        format!("f: {}, g: {}", Describe(&c_f), Describe(&c_g)),
                    );
                } else if !c_f.is_undetermined() && !c_g.is_undetermined() {
                    out.compared += 1;
                }
            }

            // invariance under g
            if let Ok(ExtendedPoint::Finite { re, im }) = eval(&self.g, ExtendedPoint::finite(z), &self.cfg) {
                let w = Complex64::new(re, im);
                let c_w = self.classifier.classify(&self.fg, w);
                if c_w.is_proven_non_escaping() {
                    out.violation(
                        index,
                        input.clone(),
                        "g(z) ∈ I(f∘g)",
                        format!("g(z) = {}: {}", show(w), Describe(&c_w)),
                    );
                } else if matches!(c_w, Classification::BoundedAtBudget) {
                    out.compared += 1;
                } else if c_w.is_escaping() {
                    out.compared += 1;
                    out.agreed += 1;
                }
            }
        }
        out
    }
}

/// For `g = f^j`: `w ∉ I(f) ⇒ g(w) ∉ I(f)`, checked on samples whose
/// non-escape is proven.
pub struct ImageSuperset<'a, C> {
    f: &'a MapExpr,
    g: MapExpr,
    samples: &'a SampleSet,
    classifier: C,
    cfg: IterationConfig,
}

impl<'a, C: Classifier> ImageSuperset<'a, C> {
    pub fn new(
        f: &'a MapExpr,
        j: u32,
        samples: &'a SampleSet,
        classifier: C,
        cfg: IterationConfig,
    ) -> Result<Self, SuiteError> {
        f.validate()?;
        if j == 0 {
            return Err(SuiteError::ZeroExponent);
        }
        Ok(ImageSuperset {
            f,
            g: f.clone().iterate(j),
            samples,
            classifier,
            cfg,
        })
    }
}

impl<C: Classifier> Suite for ImageSuperset<'_, C> {
    fn name(&self) -> &str {
        "image-superset"
    }

    fn len(&self) -> usize {
        self.samples.points.len()
    }

    fn check(&self, index: usize) -> SampleOutcome {
        let w = self.samples.points[index];
        let c_w = self.classifier.classify(self.f, w);
        if !c_w.is_proven_non_escaping() {
            return SampleOutcome::skip();
        }
        let Ok(ExtendedPoint::Finite { re, im }) = eval(&self.g, ExtendedPoint::finite(w), &self.cfg) else {
            return SampleOutcome::skip();
        };
        let gw = Complex64::new(re, im);
        let c_gw = self.classifier.classify(self.f, gw);
        let mut out = SampleOutcome::ok();
        if c_gw.is_escaping() {
            out.violation(
                index,
                show(w),
                format!("g(w) = {} not escaping", show(gw)),
                Describe(&c_gw).to_string(),
            );
        }
        out
    }
}

/// `g = φ∘f∘φ⁻¹` with `φ(z) = az + b`: verdicts for `z` under `f` and for
/// `φ(z)` under `g` must be consistent. `g` is classified as a map in its
/// own right, never by delegation to `f`.
pub struct Conjugacy<'a, C> {
    f: &'a MapExpr,
    g: MapExpr,
    a: Complex64,
    b: Complex64,
    samples: &'a SampleSet,
    classifier: C,
}

impl<'a, C: Classifier> Conjugacy<'a, C> {
    pub fn new(
        f: &'a MapExpr,
        a: Complex64,
        b: Complex64,
        samples: &'a SampleSet,
        classifier: C,
    ) -> Result<Self, SuiteError> {
        f.validate()?;
        if a == Complex64::new(0.0, 0.0) {
            return Err(SuiteError::DegenerateConjugacy);
        }
        Ok(Conjugacy {
            f,
            g: f.clone().conjugate(a, b),
            a,
            b,
            samples,
            classifier,
        })
    }

    pub fn conjugate_map(&self) -> &MapExpr {
        &self.g
    }
}

impl<C: Classifier> Suite for Conjugacy<'_, C> {
    fn name(&self) -> &str {
        "conjugacy"
    }

    fn len(&self) -> usize {
        self.samples.points.len()
    }

    fn agreement_threshold(&self) -> Option<f64> {
        Some(AGREEMENT_THRESHOLD)
    }

    fn check(&self, index: usize) -> SampleOutcome {
        let z = self.samples.points[index];
        let c_f = self.classifier.classify(self.f, z);
        let c_g = self.classifier.classify(&self.g, self.a * z + self.b);
        let mut out = SampleOutcome::ok();
        if !out.compare(index, &show(z), "f at z vs g at φ(z)", &c_f, &c_g) {
            out.skipped = true;
        }
        out
    }
}
