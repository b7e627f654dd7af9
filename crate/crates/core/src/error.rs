use alloc::string::String;
use core::fmt;

/// A map node whose parameters break a family or combinator constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintViolation {
    /// Dotted path from the root, e.g. `root.inner.base`.
    pub path: String,
    /// The inequality that failed, e.g. `Re(lambda) < 0`.
    pub constraint: &'static str,
}

impl fmt::Display for ConstraintViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "constraint violated at {}: {}", self.path, self.constraint)
    }
}

/// Failure to turn map text into a valid [`MapExpr`](crate::MapExpr).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapError {
    Syntax { offset: usize, message: String },
    Constraint(ConstraintViolation),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::Syntax { offset, message } => {
                write!(f, "syntax error at byte {}: {}", offset, message)
            }
            MapError::Constraint(v) => v.fmt(f),
        }
    }
}

impl From<ConstraintViolation> for MapError {
    fn from(v: ConstraintViolation) -> Self {
        MapError::Constraint(v)
    }
}

/// Why a single map application could not produce a usable point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalError {
    /// A directed point sits too close to the imaginary direction for the
    /// sign of its real part to be resolved.
    DegeneratePhase,
    /// A NaN appeared in an intermediate result.
    Nan,
}

impl EvalError {
    pub fn reason(self) -> &'static str {
        match self {
            EvalError::DegeneratePhase => "degenerate-phase",
            EvalError::Nan => "nan",
        }
    }
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.reason())
    }
}

/// Rejected [`IterationConfig`](crate::IterationConfig) field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigError(pub &'static str);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid iteration config: {}", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ConstraintViolation {}
#[cfg(feature = "std")]
impl std::error::Error for MapError {}
#[cfg(feature = "std")]
impl std::error::Error for EvalError {}
#[cfg(feature = "std")]
impl std::error::Error for ConfigError {}
