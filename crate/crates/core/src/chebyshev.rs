//! Chebyshev polynomials of the first kind over the whole real line.
//!
//! Inside `[-1, 1]` the trigonometric form is used; outside it the hyperbolic
//! form keeps every intermediate real.

use libm::{acos, acosh, cos, cosh};

/// `T_degree(x)`, defined for every real `x`.
///
/// `cos(d·arccos x)` for `|x| ≤ 1`, `cosh(d·arccosh x)` for `x > 1` and
/// `(−1)^d·cosh(d·arccosh(−x))` for `x < −1`.
pub fn chebyshev_t(degree: u32, x: f64) -> f64 {
    let d = f64::from(degree);
    if x > 1.0 {
        cosh(d * acosh(x))
    } else if x < -1.0 {
        let magnitude = cosh(d * acosh(-x));
        if degree.is_multiple_of(2) {
            magnitude
        } else {
            -magnitude
        }
    } else {
        cos(d * acos(x))
    }
}

/// The fractional-degree polynomial `T_{1/degree}(x)`.
///
/// Equals `cosh(arccosh(x)/degree)` for `x ≥ 1` and `cos(arccos(x)/degree)` on
/// `[-1, 1]`, so `chebyshev_t(d, chebyshev_t_fractional(d, x)) == x` for `x ≥ 1`.
/// Returns NaN below `-1`.
pub fn chebyshev_t_fractional(degree: u32, x: f64) -> f64 {
    let d = f64::from(degree);
    if x >= 1.0 {
        cosh(acosh(x) / d)
    } else if x >= -1.0 {
        cos(acos(x) / d)
    } else {
        f64::NAN
    }
}
