//! Points of the plane, including ones too large for `f64`.

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// A complex value that is either an ordinary finite number or a
/// *directed overflow*: modulus `e^{log_modulus}` in direction `angle`.
///
/// `angle` is kept unreduced; reduce it modulo 2π before using its phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtendedPoint {
    Finite { re: f64, im: f64 },
    Directed { log_modulus: f64, angle: f64 },
}

impl ExtendedPoint {
    pub fn finite(z: Complex64) -> Self {
        ExtendedPoint::Finite { re: z.re, im: z.im }
    }

    pub fn as_complex(&self) -> Option<Complex64> {
        match *self {
            ExtendedPoint::Finite { re, im } => Some(Complex64::new(re, im)),
            ExtendedPoint::Directed { .. } => None,
        }
    }

    pub fn is_directed(&self) -> bool {
        matches!(self, ExtendedPoint::Directed { .. })
    }

    pub fn has_nan(&self) -> bool {
        match *self {
            ExtendedPoint::Finite { re, im } => re.is_nan() || im.is_nan(),
            ExtendedPoint::Directed { log_modulus, angle } => log_modulus.is_nan() || angle.is_nan(),
        }
    }

    /// Natural log of the modulus (`-inf` at the origin).
    pub fn log_modulus(&self) -> f64 {
        match *self {
            ExtendedPoint::Finite { re, im } => re.hypot(im).ln(),
            ExtendedPoint::Directed { log_modulus, .. } => log_modulus,
        }
    }

    /// Cosine of the direction of a directed point, with the angle reduced
    /// modulo 2π first. `None` for finite points or unusable angles.
    pub fn direction_cos(&self) -> Option<f64> {
        match *self {
            ExtendedPoint::Directed { angle, .. } if angle.is_finite() => Some(reduce_angle(angle).cos()),
            _ => None,
        }
    }

    /// Real part, saturating to ±inf for directed points whose real part
    /// exceeds the `f64` range. `None` when the sign cannot be resolved
    /// (|cos| below `eps` or an unusable angle).
    pub fn real_part(&self, eps: f64) -> Option<f64> {
        match *self {
            ExtendedPoint::Finite { re, .. } => Some(re),
            ExtendedPoint::Directed { log_modulus, .. } => {
                let cos = self.direction_cos()?;
                if cos.abs() < eps {
                    return None;
                }
                Some(scaled(log_modulus.exp(), cos))
            }
        }
    }
}

/// Reduces an angle into `(-π, π]`.
pub fn reduce_angle(angle: f64) -> f64 {
    use core::f64::consts::{PI, TAU};
    let r = angle % TAU;
    if r > PI {
        r - TAU
    } else if r <= -PI {
        r + TAU
    } else {
        r
    }
}

/// `magnitude * factor` where a zero factor wins over an infinite
/// magnitude (so `inf * 0 = 0` instead of NaN).
pub(crate) fn scaled(magnitude: f64, factor: f64) -> f64 {
    if factor == 0.0 {
        0.0
    } else {
        magnitude * factor
    }
}

impl From<Complex64> for ExtendedPoint {
    fn from(z: Complex64) -> Self {
        ExtendedPoint::finite(z)
    }
}
