//! Symbolic map expressions.
//!
//! A [`MapExpr`] is a small immutable tree built from the two exponential
//! families, the scaled exponential `e^{λz}` and a handful of combinators
//! (iterate, additive shift, composition, affine conjugation).

use alloc::boxed::Box;
use alloc::string::String;
use core::f64::consts::PI;
use core::fmt;

use num_complex::Complex64;

use crate::error::ConstraintViolation;

/// An entire map assembled from family members and combinators.
#[derive(Clone, Debug, PartialEq)]
pub enum MapExpr {
    /// `e^{-z+λ} + ξ` with `Re λ < 0`, `Re ξ ≥ 1`.
    FamilyF { lambda: Complex64, xi: Complex64 },
    /// `e^{z+μ} + ζ` with `Re μ < 0`, `Re ζ ≤ -1`.
    FamilyG { mu: Complex64, zeta: Complex64 },
    /// `e^{λz}` with `λ ≠ 0`.
    ScaledExp { lambda: Complex64 },
    /// `base` composed with itself `s` times.
    Iterate { base: Box<MapExpr>, s: u32 },
    /// `base + c`.
    Shift { base: Box<MapExpr>, c: Complex64 },
    /// `outer ∘ inner`.
    Compose { outer: Box<MapExpr>, inner: Box<MapExpr> },
    /// `φ ∘ base ∘ φ⁻¹` with `φ(z) = az + b`.
    Conjugate {
        a: Complex64,
        b: Complex64,
        base: Box<MapExpr>,
    },
}

/// Which absorbing-half-plane family a map belongs to at the top level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TopFamily {
    F { lambda: Complex64, xi: Complex64 },
    G { mu: Complex64, zeta: Complex64 },
}

impl MapExpr {
    pub fn family_f(lambda: Complex64, xi: Complex64) -> Self {
        MapExpr::FamilyF { lambda, xi }
    }

    pub fn family_g(mu: Complex64, zeta: Complex64) -> Self {
        MapExpr::FamilyG { mu, zeta }
    }

    pub fn scaled_exp(lambda: Complex64) -> Self {
        MapExpr::ScaledExp { lambda }
    }

    pub fn iterate(self, s: u32) -> Self {
        MapExpr::Iterate {
            base: Box::new(self),
            s,
        }
    }

    pub fn shift(self, c: Complex64) -> Self {
        MapExpr::Shift {
            base: Box::new(self),
            c,
        }
    }

    /// `self ∘ inner`.
    pub fn compose(self, inner: MapExpr) -> Self {
        MapExpr::Compose {
            outer: Box::new(self),
            inner: Box::new(inner),
        }
    }

    pub fn conjugate(self, a: Complex64, b: Complex64) -> Self {
        MapExpr::Conjugate {
            a,
            b,
            base: Box::new(self),
        }
    }

    /// The family this map belongs to when it is a bare family member.
    ///
    /// Combinators never report a family, even when the result happens to
    /// be one (e.g. `iter(F(..), 1)`); absorption rules key off the tree
    /// shape, not the function.
    pub fn top_family(&self) -> Option<TopFamily> {
        match *self {
            MapExpr::FamilyF { lambda, xi } => Some(TopFamily::F { lambda, xi }),
            MapExpr::FamilyG { mu, zeta } => Some(TopFamily::G { mu, zeta }),
            _ => None,
        }
    }

    /// Checks every node against its parameter constraints, depth first,
    /// and reports the first failure together with its node path.
    pub fn validate(&self) -> Result<(), ConstraintViolation> {
        let mut path = String::from("root");
        self.validate_at(&mut path)
    }

    // negated comparisons also reject NaN
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn validate_at(&self, path: &mut String) -> Result<(), ConstraintViolation> {
        let fail = |path: &String, constraint: &'static str| {
            Err(ConstraintViolation {
                path: path.clone(),
                constraint,
            })
        };
        match self {
            MapExpr::FamilyF { lambda, xi } => {
                if !finite(*lambda) || !finite(*xi) {
                    return fail(path, "finite parameters");
                }
                if !(lambda.re < 0.0) {
                    return fail(path, "Re(lambda) < 0");
                }
                if !(xi.re >= 1.0) {
                    return fail(path, "Re(xi) ≥ 1");
                }
                Ok(())
            }
            MapExpr::FamilyG { mu, zeta } => {
                if !finite(*mu) || !finite(*zeta) {
                    return fail(path, "finite parameters");
                }
                if !(mu.re < 0.0) {
                    return fail(path, "Re(mu) < 0");
                }
                if !(zeta.re <= -1.0) {
                    return fail(path, "Re(zeta) ≤ -1");
                }
                Ok(())
            }
            MapExpr::ScaledExp { lambda } => {
                if !finite(*lambda) {
                    return fail(path, "finite parameters");
                }
                if *lambda == Complex64::new(0.0, 0.0) {
                    return fail(path, "lambda ≠ 0");
                }
                Ok(())
            }
            MapExpr::Iterate { base, s } => {
                if *s < 1 {
                    return fail(path, "s ≥ 1");
                }
                with_segment(path, "base", |p| base.validate_at(p))
            }
            MapExpr::Shift { base, c } => {
                if !finite(*c) {
                    return fail(path, "finite parameters");
                }
                with_segment(path, "base", |p| base.validate_at(p))
            }
            MapExpr::Compose { outer, inner } => {
                with_segment(path, "outer", |p| outer.validate_at(p))?;
                with_segment(path, "inner", |p| inner.validate_at(p))
            }
            MapExpr::Conjugate { a, b, base } => {
                if !finite(*a) || !finite(*b) {
                    return fail(path, "finite parameters");
                }
                if *a == Complex64::new(0.0, 0.0) {
                    return fail(path, "a ≠ 0");
                }
                with_segment(path, "base", |p| base.validate_at(p))
            }
        }
    }

    /// An additive period `c` with `f(z + c) = f(z)`, when the tree shape
    /// makes one evident. Compositions are not analysed.
    pub fn period_of(&self) -> Option<Complex64> {
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        match self {
            MapExpr::FamilyF { .. } | MapExpr::FamilyG { .. } => Some(two_pi_i),
            MapExpr::ScaledExp { lambda } => Some(two_pi_i / *lambda),
            MapExpr::Iterate { base, .. } | MapExpr::Shift { base, .. } => base.period_of(),
            MapExpr::Conjugate { a, base, .. } => base.period_of().map(|c| *a * c),
            MapExpr::Compose { .. } => None,
        }
    }

    /// Number of nodes in the tree.
    pub fn node_count(&self) -> usize {
        match self {
            MapExpr::FamilyF { .. } | MapExpr::FamilyG { .. } | MapExpr::ScaledExp { .. } => 1,
            MapExpr::Iterate { base, .. } | MapExpr::Shift { base, .. } | MapExpr::Conjugate { base, .. } => {
                1 + base.node_count()
            }
            MapExpr::Compose { outer, inner } => 1 + outer.node_count() + inner.node_count(),
        }
    }
}

fn finite(c: Complex64) -> bool {
    c.re.is_finite() && c.im.is_finite()
}

fn with_segment<T>(path: &mut String, seg: &str, f: impl FnOnce(&mut String) -> T) -> T {
    let len = path.len();
    path.push('.');
    path.push_str(seg);
    let out = f(path);
    path.truncate(len);
    out
}

/// Writes a complex literal in the canonical `a+bi` / `a-bi` form accepted
/// by the parser. Reals use the shortest representation that round-trips.
pub struct Literal(pub Complex64);

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Complex64 { re, im } = self.0;
        let sign = if im.is_sign_negative() { '-' } else { '+' };
        write!(f, "{}{}{}i", re, sign, im.abs())
    }
}

/// Pretty-prints in the map grammar; `parse_map` inverts this exactly.
impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::FamilyF { lambda, xi } => {
                write!(f, "F({}, {})", Literal(*lambda), Literal(*xi))
            }
            MapExpr::FamilyG { mu, zeta } => write!(f, "G({}, {})", Literal(*mu), Literal(*zeta)),
            MapExpr::ScaledExp { lambda } => write!(f, "exp({})", Literal(*lambda)),
            MapExpr::Iterate { base, s } => write!(f, "iter({}, {})", base, s),
            MapExpr::Shift { base, c } => write!(f, "shift({}, {})", base, Literal(*c)),
            MapExpr::Compose { outer, inner } => write!(f, "comp({}, {})", outer, inner),
            MapExpr::Conjugate { a, b, base } => {
                write!(f, "conj({}, {}, {})", Literal(*a), Literal(*b), base)
            }
        }
    }
}
