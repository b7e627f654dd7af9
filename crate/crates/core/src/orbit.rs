//! Orbit iteration and classification.
//!
//! Verdicts come in two strengths. [`Classification::NonEscapingProven`] is
//! backed by the absorbing half-plane estimates for the two families and
//! holds for the true orbit. [`Classification::Escaping`] is a numerical verdict at finite
//! resolution: the orbit has been seen running away twice in a row.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{ConfigError, ConstraintViolation, EvalError};
use crate::eval::eval;
use crate::map::{MapExpr, TopFamily};
use crate::point::ExtendedPoint;

/// Knobs for [`classify`] and [`run_orbit`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationConfig {
    pub max_iter: u32,
    /// `Re w` above which `e^w` is kept as a directed point.
    pub overflow_log_threshold: f64,
    /// Real-part depth `T` for the family escape rules.
    pub escape_real_threshold: f64,
    /// `|cos θ|` below which a directed phase is treated as unresolvable.
    pub degeneracy_eps: f64,
    /// Modulus `R` for the generic escape rule.
    pub generic_escape_radius: f64,
    pub record_orbit: bool,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            max_iter: 1000,
            overflow_log_threshold: 700.0,
            escape_real_threshold: 20.0,
            degeneracy_eps: 1e-12,
            generic_escape_radius: 1e10,
            record_orbit: false,
        }
    }
}

impl IterationConfig {
    pub fn with_max_iter(mut self, max_iter: u32) -> Self {
        self.max_iter = max_iter;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.max_iter < 1 {
            return Err(ConfigError("max_iter ≥ 1"));
        }
        if !(self.overflow_log_threshold > 1.0 && self.overflow_log_threshold < 709.0) {
            return Err(ConfigError("overflow_log_threshold ∈ (1, 709)"));
        }
        if !(self.escape_real_threshold > 0.0 && self.escape_real_threshold.is_finite()) {
            return Err(ConfigError("escape_real_threshold > 0"));
        }
        if !(self.generic_escape_radius > 1.0 && self.generic_escape_radius.is_finite()) {
            return Err(ConfigError("generic_escape_radius > 1"));
        }
        if !(self.degeneracy_eps >= 0.0 && self.degeneracy_eps < 1.0) {
            return Err(ConfigError("degeneracy_eps ∈ [0, 1)"));
        }
        Ok(())
    }
}

/// Proven reason an orbit can never escape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AbsorptionRule {
    /// Family F orbit reached `Re z ≥ 0`.
    RightHalfPlaneF,
    /// Family G orbit reached `Re z ≤ 0`.
    LeftHalfPlaneG,
    /// A directed point's exponential underflowed, leaving exactly the
    /// additive constant, which lies in the absorbing half plane.
    UnderflowToFixedNeighborhood,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Classification {
    Escaping { step: u32 },
    NonEscapingProven { rule: AbsorptionRule, step: u32 },
    BoundedAtBudget,
    Undetermined { reason: &'static str },
}

impl Classification {
    pub fn is_escaping(&self) -> bool {
        matches!(self, Classification::Escaping { .. })
    }

    pub fn is_proven_non_escaping(&self) -> bool {
        matches!(self, Classification::NonEscapingProven { .. })
    }

    /// Escaping or NonEscapingProven.
    pub fn is_determined(&self) -> bool {
        self.is_escaping() || self.is_proven_non_escaping()
    }

    pub fn is_undetermined(&self) -> bool {
        matches!(self, Classification::Undetermined { .. })
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Classification::Escaping { .. } => "Escaping",
            Classification::NonEscapingProven { .. } => "NonEscapingProven",
            Classification::BoundedAtBudget => "BoundedAtBudget",
            Classification::Undetermined { .. } => "Undetermined",
        }
    }

    pub fn step(&self) -> Option<u32> {
        match *self {
            Classification::Escaping { step } | Classification::NonEscapingProven { step, .. } => Some(step),
            _ => None,
        }
    }

    /// True when one verdict says Escaping and the other NonEscapingProven.
    pub fn conflicts_with(&self, other: &Classification) -> bool {
        (self.is_escaping() && other.is_proven_non_escaping()) || (self.is_proven_non_escaping() && other.is_escaping())
    }
}

/// Result of [`run_orbit`].
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitRecord {
    pub seed: Complex64,
    /// Every iterate from the seed to the terminal point, when recorded.
    pub points: Option<Vec<ExtendedPoint>>,
    pub classification: Classification,
    pub steps_taken: u32,
}

/// Classifies the orbit of `z0` under `map`.
pub fn classify(map: &MapExpr, z0: Complex64, cfg: &IterationConfig) -> Result<Classification, ConstraintViolation> {
    map.validate()?;
    Ok(classify_valid(map, z0, cfg))
}

/// [`classify`] without re-validating the map.
pub fn classify_valid(map: &MapExpr, z0: Complex64, cfg: &IterationConfig) -> Classification {
    iterate(map, z0, cfg, None).0
}

/// Like [`classify`], additionally returning the orbit when
/// `cfg.record_orbit` is set.
pub fn run_orbit(map: &MapExpr, z0: Complex64, cfg: &IterationConfig) -> Result<OrbitRecord, ConstraintViolation> {
    map.validate()?;
    let mut points = cfg.record_orbit.then(Vec::new);
    let (classification, steps_taken) = iterate(map, z0, cfg, points.as_mut());
    Ok(OrbitRecord {
        seed: z0,
        points,
        classification,
        steps_taken,
    })
}

fn iterate(
    map: &MapExpr,
    z0: Complex64,
    cfg: &IterationConfig,
    mut trace: Option<&mut Vec<ExtendedPoint>>,
) -> (Classification, u32) {
    let family = map.top_family();
    let mut cur = ExtendedPoint::finite(z0);
    if let Some(t) = trace.as_deref_mut() {
        t.push(cur);
    }
    if cur.has_nan() {
        return (
            Classification::Undetermined {
                reason: EvalError::Nan.reason(),
            },
            0,
        );
    }
    let mut n = 0u32;
    loop {
        if let Some(rule) = absorbed(family, &cur) {
            return (Classification::NonEscapingProven { rule, step: n }, n);
        }
        if n >= cfg.max_iter {
            return (Classification::BoundedAtBudget, n);
        }
        let next = match eval(map, cur, cfg) {
            Ok(p) => p,
            Err(e) => return (Classification::Undetermined { reason: e.reason() }, n),
        };
        if let Some(t) = trace.as_deref_mut() {
            t.push(next);
        }
        if family.is_some() && cur.is_directed() && !next.is_directed() {
            let rule = AbsorptionRule::UnderflowToFixedNeighborhood;
            return (Classification::NonEscapingProven { rule, step: n + 1 }, n + 1);
        }
        if escaping(family, &cur, &next, cfg) {
            return (Classification::Escaping { step: n }, n + 1);
        }
        cur = next;
        n += 1;
    }
}

/// Half-plane absorption. Applied to finite points only; a directed point
/// gets its verdict from the next evaluation, which either collapses it or
/// reports a degenerate phase.
fn absorbed(family: Option<TopFamily>, p: &ExtendedPoint) -> Option<AbsorptionRule> {
    let ExtendedPoint::Finite { re, .. } = *p else {
        return None;
    };
    match family? {
        TopFamily::F { .. } if re >= 0.0 => Some(AbsorptionRule::RightHalfPlaneF),
        TopFamily::G { .. } if re <= 0.0 => Some(AbsorptionRule::LeftHalfPlaneG),
        _ => None,
    }
}

fn escaping(family: Option<TopFamily>, cur: &ExtendedPoint, next: &ExtendedPoint, cfg: &IterationConfig) -> bool {
    let eps = cfg.degeneracy_eps;
    let t = cfg.escape_real_threshold;
    match family {
        Some(TopFamily::F { .. }) => match (cur.real_part(eps), next.real_part(eps)) {
            (Some(a), Some(b)) => a <= -t && b <= a,
            _ => false,
        },
        Some(TopFamily::G { .. }) => match (cur.real_part(eps), next.real_part(eps)) {
            (Some(a), Some(b)) => a >= t && b >= a,
            _ => false,
        },
        None => {
            let (a, b) = (cur.log_modulus(), next.log_modulus());
            (a >= cfg.generic_escape_radius.ln() && b >= a) || (cur.is_directed() && next.is_directed() && b > a)
        }
    }
}

/// Something that assigns a [`Classification`] to a seed under a map.
///
/// [`Engine`] is the real implementation; verification suites accept any
/// classifier so planted faults can be injected in tests.
pub trait Classifier {
    fn classify(&self, map: &MapExpr, z0: Complex64) -> Classification;
}

/// The iteration engine under a fixed configuration.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Engine {
    pub cfg: IterationConfig,
}

impl Engine {
    pub fn new(cfg: IterationConfig) -> Self {
        Engine { cfg }
    }
}

impl Classifier for Engine {
    fn classify(&self, map: &MapExpr, z0: Complex64) -> Classification {
        classify_valid(map, z0, &self.cfg)
    }
}

impl<F: Fn(&MapExpr, Complex64) -> Classification> Classifier for F {
    fn classify(&self, map: &MapExpr, z0: Complex64) -> Classification {
        self(map, z0)
    }
}
