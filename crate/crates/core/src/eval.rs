//! One application of a map to an extended point.
//!
//! Every primitive map is `e^{w} + additive` for an affine `w(z)`. The
//! exponent `w` is formed as a pair of saturating reals; its real part
//! decides between the three outcomes:
//!
//! * `Re w > overflow_log_threshold`: the result is directed, with log
//!   modulus `Re w` and angle `Im w` (the additive constant is dropped).
//! * `e^{Re w}` underflows: the result is exactly the additive constant.
//! * otherwise: ordinary floating point.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::EvalError;
use crate::map::MapExpr;
use crate::orbit::IterationConfig;
use crate::point::{reduce_angle, scaled, ExtendedPoint};

/// Below this, `exp` returns zero in double precision.
const EXP_UNDERFLOW: f64 = -746.0;

/// Applies `map` once to `z`.
///
/// The map is assumed valid; call [`MapExpr::validate`] first.
pub fn eval(map: &MapExpr, z: ExtendedPoint, cfg: &IterationConfig) -> Result<ExtendedPoint, EvalError> {
    let out = match map {
        MapExpr::FamilyF { lambda, xi } => {
            let (re, im) = match z {
                ExtendedPoint::Finite { re, im } => (-re, -im),
                ExtendedPoint::Directed { log_modulus, angle } => {
                    let (cos, sin) = resolved_direction(angle, cfg)?;
                    let m = log_modulus.exp();
                    (-scaled(m, cos), -scaled(m, sin))
                }
            };
            exp_plus(re + lambda.re, im + lambda.im, *xi, cfg)
        }
        MapExpr::FamilyG { mu, zeta } => {
            let (re, im) = match z {
                ExtendedPoint::Finite { re, im } => (re, im),
                ExtendedPoint::Directed { log_modulus, angle } => {
                    let (cos, sin) = resolved_direction(angle, cfg)?;
                    let m = log_modulus.exp();
                    (scaled(m, cos), scaled(m, sin))
                }
            };
            exp_plus(re + mu.re, im + mu.im, *zeta, cfg)
        }
        MapExpr::ScaledExp { lambda } => {
            let (re, im) = match z {
                ExtendedPoint::Finite { re, im } => scaled_product(*lambda, Complex64::new(re, im)),
                ExtendedPoint::Directed { log_modulus, angle } => {
                    let (cos, sin) = resolved_direction(angle + lambda.arg(), cfg)?;
                    let m = (log_modulus + lambda.norm().ln()).exp();
                    (scaled(m, cos), scaled(m, sin))
                }
            };
            exp_plus(re, im, Complex64::new(0.0, 0.0), cfg)
        }
        MapExpr::Iterate { base, s } => {
            let mut p = z;
            for _ in 0..*s {
                p = eval(base, p, cfg)?;
            }
            p
        }
        MapExpr::Shift { base, c } => match eval(base, z, cfg)? {
            ExtendedPoint::Finite { re, im } => ExtendedPoint::Finite {
                re: re + c.re,
                im: im + c.im,
            },
            d => d,
        },
        MapExpr::Compose { outer, inner } => eval(outer, eval(inner, z, cfg)?, cfg)?,
        MapExpr::Conjugate { a, b, base } => {
            let pre = affine_inverse(z, *a, *b, cfg);
            let img = eval(base, pre, cfg)?;
            affine(img, *a, *b)
        }
    };
    if out.has_nan() {
        Err(EvalError::Nan)
    } else {
        Ok(out)
    }
}

/// `cos` and `sin` of a direction, or degenerate-phase when the real part
/// of the point cannot be signed reliably.
fn resolved_direction(angle: f64, cfg: &IterationConfig) -> Result<(f64, f64), EvalError> {
    if !angle.is_finite() {
        return Err(EvalError::DegeneratePhase);
    }
    let theta = reduce_angle(angle);
    let cos = theta.cos();
    if cos.abs() < cfg.degeneracy_eps {
        return Err(EvalError::DegeneratePhase);
    }
    Ok((cos, theta.sin()))
}

/// `e^{re + i im} + add` with the overflow ladder applied.
fn exp_plus(re: f64, im: f64, add: Complex64, cfg: &IterationConfig) -> ExtendedPoint {
    if re > cfg.overflow_log_threshold {
        ExtendedPoint::Directed {
            log_modulus: re,
            angle: im,
        }
    } else if re < EXP_UNDERFLOW {
        ExtendedPoint::finite(add)
    } else {
        ExtendedPoint::finite(Complex64::new(re, im).exp() + add)
    }
}

/// `λ·z` as saturating components; never produces NaN from finite inputs.
fn scaled_product(lambda: Complex64, z: Complex64) -> (f64, f64) {
    let p = lambda * z;
    if p.re.is_finite() && p.im.is_finite() {
        return (p.re, p.im);
    }
    // Rescale so the partial products stay in range, then undo.
    const DOWN: f64 = 1.0 / (1u64 << 63) as f64 / (1u64 << 63) as f64;
    let q = (lambda * DOWN) * (z * DOWN);
    let up = 1.0 / DOWN;
    (q.re * up * up, q.im * up * up)
}

/// `(z - b) / a`, staying directed or becoming directed as needed.
fn affine_inverse(z: ExtendedPoint, a: Complex64, b: Complex64, cfg: &IterationConfig) -> ExtendedPoint {
    match z {
        ExtendedPoint::Finite { re, im } => {
            let d = Complex64::new(re, im) - b;
            let u = d / a;
            if u.re.is_finite() && u.im.is_finite() {
                ExtendedPoint::finite(u)
            } else {
                ExtendedPoint::Directed {
                    log_modulus: d.norm().ln() - a.norm().ln(),
                    angle: d.arg() - a.arg(),
                }
            }
        }
        ExtendedPoint::Directed { log_modulus, angle } => {
            let log_modulus = log_modulus - a.norm().ln();
            let angle = angle - a.arg();
            if log_modulus > cfg.overflow_log_threshold {
                ExtendedPoint::Directed { log_modulus, angle }
            } else {
                ExtendedPoint::finite(Complex64::from_polar(log_modulus.exp(), angle))
            }
        }
    }
}

/// `a·v + b`.
fn affine(v: ExtendedPoint, a: Complex64, b: Complex64) -> ExtendedPoint {
    match v {
        ExtendedPoint::Finite { re, im } => {
            let v = Complex64::new(re, im);
            let w = a * v + b;
            if w.re.is_finite() && w.im.is_finite() {
                ExtendedPoint::finite(w)
            } else {
                ExtendedPoint::Directed {
                    log_modulus: a.norm().ln() + v.norm().ln(),
                    angle: a.arg() + v.arg(),
                }
            }
        }
        ExtendedPoint::Directed { log_modulus, angle } => ExtendedPoint::Directed {
            log_modulus: log_modulus + a.norm().ln(),
            angle: angle + a.arg(),
        },
    }
}
