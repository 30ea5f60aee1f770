use crate::error::{Error, Result};

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
const MAX_ITER: usize = 500;

/// Brent's method on a sign-changing bracket.
///
/// Returns a point inside `[bracket_lo, bracket_hi]` where `f` vanishes, or
/// where the bracket has shrunk to `tol` (plus a few ulps of the root).
pub fn find_root<F: Fn(f64) -> f64>(f: F, bracket_lo: f64, bracket_hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("root tolerance must be positive, got {tol}")));
    }
    let (mut a, mut b) = (bracket_lo.min(bracket_hi), bracket_lo.max(bracket_hi));
    let mut fa = f(a);
    let mut fb = f(b);
    if fa.is_nan() || fb.is_nan() || fa * fb > 0.0 {
        return Err(Error::InvalidBracket {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if fb * fc > 0.0 {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic interpolation, or secant when a == c
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }
    Err(Error::RootNonConvergence { iterations: MAX_ITER })
}
