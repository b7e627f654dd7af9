//! Horizontal strips that contain the escaping sets of the two families.
//!
//! For family F with parameter λ the escaping set lies in `Re z < 0` within
//! the strips `(4k-3)π/2 < Im z - Im λ < (4k-1)π/2`; for family G with
//! parameter μ it lies in `Re z > 0` within `(4k-1)π/2 < Im z + Im μ <
//! (4k+1)π/2`. The offset by `Im λ` (resp. `-Im μ`) is what the half-plane
//! argument actually yields. [`StripForm::Literal`] drops the offset.

use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StripFamily {
    F,
    G,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum StripForm {
    /// Strips translated by the imaginary part of the parameter.
    #[default]
    Offset,
    /// Untranslated strips; agrees with `Offset` when the parameter is real.
    Literal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StripId {
    pub k: i64,
    pub family: StripFamily,
}

/// The strip containing `z`, or `None` when `z` is in the wrong half plane
/// or on a strip boundary. `param` is λ for F and μ for G.
pub fn strip_of(z: Complex64, family: StripFamily, param: Complex64) -> Option<StripId> {
    strip_of_form(z, family, param, StripForm::Offset)
}

pub fn strip_of_form(z: Complex64, family: StripFamily, param: Complex64, form: StripForm) -> Option<StripId> {
    let y = reduced_height(z.im, family, param, form);
    let (right_half, lo_num) = match family {
        // (4k-3)π/2 < y < (4k-1)π/2
        StripFamily::F => (z.re < 0.0, -3.0),
        // (4k-1)π/2 < y < (4k+1)π/2
        StripFamily::G => (z.re > 0.0, -1.0),
    };
    if !right_half || !y.is_finite() {
        return None;
    }
    // lo(k) = (4k + lo_num)π/2; the candidate is the smallest k with lo(k) > y - π,
    // equivalently the unique k whose open interval of length π could hold y.
    let t = y / FRAC_PI_2;
    let k = ((t - lo_num - 2.0) / 4.0).floor() as i64 + 1;
    for k in [k - 1, k, k + 1] {
        let lo = (4 * k) as f64 + lo_num;
        let hi = lo + 2.0;
        if lo * FRAC_PI_2 < y && y < hi * FRAC_PI_2 {
            return Some(StripId { k, family });
        }
    }
    None
}

fn reduced_height(im: f64, family: StripFamily, param: Complex64, form: StripForm) -> f64 {
    match (form, family) {
        (StripForm::Literal, _) => im,
        (StripForm::Offset, StripFamily::F) => im - param.im,
        (StripForm::Offset, StripFamily::G) => im + param.im,
    }
}

/// Heights `y` of the strip boundaries `(2m+1)π/2` shifted as in
/// [`strip_of`], lying in `[y_min, y_max]`, in increasing order.
pub fn boundaries_in(
    y_min: f64,
    y_max: f64,
    family: StripFamily,
    param: Complex64,
    form: StripForm,
) -> impl Iterator<Item = f64> {
    let shift = match (form, family) {
        (StripForm::Literal, _) => 0.0,
        (StripForm::Offset, StripFamily::F) => param.im,
        (StripForm::Offset, StripFamily::G) => -param.im,
    };
    let first = ((y_min - shift) / FRAC_PI_2 - 1.0) / 2.0;
    let m0 = first.ceil() as i64;
    (m0..)
        .map(move |m| (2 * m + 1) as f64 * FRAC_PI_2 + shift)
        .skip_while(move |&y| y < y_min)
        .take_while(move |&y| y <= y_max)
}

/// The sign characterisation of strip membership used as a cross-check:
/// `Re z < 0 ∧ cos(Im z - Im λ) < 0` for F, `Re z > 0 ∧ cos(Im z + Im μ) > 0`
/// for G.
pub fn in_strip_by_sign(z: Complex64, family: StripFamily, param: Complex64) -> bool {
    match family {
        StripFamily::F => z.re < 0.0 && (z.im - param.im).cos() < 0.0,
        StripFamily::G => z.re > 0.0 && (z.im + param.im).cos() > 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const LAMBDA: Complex64 = Complex64::new(-1.0, 0.0);

    #[test]
    fn first_f_strip() {
        assert_eq!(
            strip_of(c(-2.0, PI), StripFamily::F, LAMBDA),
            Some(StripId {
                k: 1,
                family: StripFamily::F
            })
        );
    }

    #[test]
    fn real_axis_is_outside_f_strips() {
        assert_eq!(strip_of(c(-2.0, 0.0), StripFamily::F, LAMBDA), None);
    }

    #[test]
    fn translate_moves_one_strip() {
        assert_eq!(strip_of(c(-2.0, 3.0 * PI), StripFamily::F, LAMBDA).unwrap().k, 2);
        assert_eq!(strip_of(c(-2.0, -PI), StripFamily::F, LAMBDA).unwrap().k, 0);
    }

    #[test]
    fn g_strip_on_real_axis() {
        assert_eq!(
            strip_of(c(2.0, 0.0), StripFamily::G, LAMBDA),
            Some(StripId {
                k: 0,
                family: StripFamily::G
            })
        );
        assert_eq!(strip_of(c(-2.0, 0.0), StripFamily::G, LAMBDA), None);
        assert_eq!(strip_of(c(2.0, 2.0 * PI), StripFamily::G, LAMBDA).unwrap().k, 1);
    }

    #[test]
    fn wrong_half_plane_and_axis() {
        assert_eq!(strip_of(c(1.0, PI), StripFamily::F, LAMBDA), None);
        assert_eq!(strip_of(c(0.0, PI), StripFamily::F, LAMBDA), None);
        assert_eq!(strip_of(c(0.0, 0.0), StripFamily::G, LAMBDA), None);
    }

    #[test]
    fn boundaries_are_excluded() {
        assert_eq!(strip_of(c(-1.0, FRAC_PI_2), StripFamily::F, LAMBDA), None);
        assert_eq!(strip_of(c(1.0, FRAC_PI_2), StripFamily::G, LAMBDA), None);
    }

    #[test]
    fn offset_versus_literal() {
        let lambda = c(-1.0, PI);
        // Im z - Im λ = 0: outside the offset strips, inside the literal one
        let z = c(-1.0, PI);
        assert_eq!(strip_of(z, StripFamily::F, lambda), None);
        assert_eq!(
            strip_of_form(z, StripFamily::F, lambda, StripForm::Literal).unwrap().k,
            1
        );
        let mu = c(-1.0, PI);
        assert_eq!(strip_of(c(1.0, 0.0), StripFamily::G, mu), None);
        assert_eq!(strip_of(c(1.0, -PI), StripFamily::G, mu).unwrap().k, 0);
    }

    #[test]
    fn boundary_listing() {
        let ys: Vec<f64> = boundaries_in(0.0, 2.0 * PI, StripFamily::F, LAMBDA, StripForm::Offset).collect();
        assert_eq!(ys.len(), 2);
        assert!((ys[0] - FRAC_PI_2).abs() < 1e-15);
        assert!((ys[1] - 3.0 * FRAC_PI_2).abs() < 1e-15);
        let ys: Vec<f64> = boundaries_in(-2.0, 2.0, StripFamily::G, LAMBDA, StripForm::Offset).collect();
        assert_eq!(ys.len(), 2);
        assert!((ys[0] + FRAC_PI_2).abs() < 1e-15);
        let none: Vec<f64> = boundaries_in(2.0, 4.0, StripFamily::F, LAMBDA, StripForm::Offset).collect();
        assert!(none.is_empty());
    }
}
