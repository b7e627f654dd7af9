//! Escaping sets of exponential maps: map expressions, overflow-safe
//! evaluation, orbit classification, strip geometry, escape fields and
//! sampling-based verification suites.
//!
//! The crate is `no_std` with `alloc` when the default `std` feature is
//! off; floating-point functions then come from `libm`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod eval;
pub mod field;
pub mod map;
pub mod orbit;
pub mod parse;
pub mod point;
pub mod sample;
pub mod strip;
pub mod verify;

pub use error::{ConfigError, ConstraintViolation, EvalError, MapError};
pub use eval::eval;
pub use field::{classify_grid, overlay_strips, Cell, EscapeField, StripMarks};
pub use map::{Literal, MapExpr, TopFamily};
pub use orbit::{
    classify, classify_valid, run_orbit, AbsorptionRule, Classification, Classifier, Engine, IterationConfig,
    OrbitRecord,
};
pub use parse::{parse_complex, parse_map};
pub use point::ExtendedPoint;
pub use sample::{SampleSet, SplitMix64, Window};
pub use strip::{strip_of, strip_of_form, StripFamily, StripForm, StripId};
pub use verify::{merge, run_suite, Suite, SuiteError, Verdict, VerificationReport, Violation};

pub use num_complex::Complex64;
