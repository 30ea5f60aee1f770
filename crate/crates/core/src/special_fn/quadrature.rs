//! Globally adaptive Gauss–Kronrod (7/15) quadrature.
//!
//! Finite intervals are bisected where the local error estimate is largest.
//! Infinite intervals are walked outward in doubling steps from a finite
//! point until a step adds less than `tail_truncation_mass` of the running
//! total; this terminates quickly for exponentially decaying integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
/// Gauss weights for the odd Kronrod nodes (indices 1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Doubling steps allowed when walking out along an infinite interval.
const MAX_TAIL_STEPS: usize = 80;

/// Tolerances for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// An infinite tail is cut once a doubling step adds less than this
    /// fraction of the running total.
    pub tail_truncation_mass: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_subdivisions: 4000,
            tail_truncation_mass: 1e-12,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64, max_subdivisions: usize, tail_truncation_mass: f64) -> Result<Self> {
        let spec = Self {
            rel_tol,
            abs_tol,
            max_subdivisions,
            tail_truncation_mass,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter("quadrature tolerances must be positive".into()));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidParameter("max_subdivisions must be at least 1".into()));
        }
        if !(self.tail_truncation_mass > 0.0 && self.tail_truncation_mass <= self.rel_tol) {
            return Err(Error::InvalidParameter(format!(
                "tail_truncation_mass must lie in (0, rel_tol = {}], got {}",
                self.rel_tol, self.tail_truncation_mass
            )));
        }
        Ok(())
    }
}

/// Integrates `f` over `[lower, upper]`. Either bound may be infinite.
///
/// Infinite ranges are walked from the nearest finite bound (or from 0 for
/// the whole line) with a unit initial step; use [`integrate_scaled`] when
/// the integrand lives on a very different length scale.
pub fn integrate<F: Fn(f64) -> f64>(f: F, lower: f64, upper: f64, spec: &QuadratureSpec) -> Result<f64> {
    integrate_scaled(f, lower, upper, 0.0, 1.0, spec)
}

/// Like [`integrate`], with an explicit `center` (used to split the whole
/// real line) and initial tail step `scale`.
pub fn integrate_scaled<F: Fn(f64) -> f64>(
    f: F,
    lower: f64,
    upper: f64,
    center: f64,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<f64> {
    spec.validate()?;
    if lower.is_nan() || upper.is_nan() {
        return Err(Error::Domain("integration bounds must not be NaN".into()));
    }
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Domain(format!(
            "tail step must be positive and finite, got {scale}"
        )));
    }
    if lower > upper {
        return integrate_scaled(f, upper, lower, center, scale, spec).map(|v| -v);
    }
    if lower == upper {
        return Ok(0.0);
    }
    match (lower.is_finite(), upper.is_finite()) {
        (true, true) => adaptive(&f, lower, upper, spec),
        (true, false) => tail(&f, lower, scale, spec),
        (false, true) => tail(&|x: f64| f(-x), -upper, scale, spec),
        (false, false) => {
            let right = tail(&f, center, scale, spec)?;
            let left = tail(&|x: f64| f(-x), -center, scale, spec)?;
            Ok(left + right)
        }
    }
}

/// Integral of `f` over `[start, inf)`, walking outward with steps
/// `scale, 2 scale, 4 scale, ...`.
fn tail<F: Fn(f64) -> f64>(f: &F, start: f64, scale: f64, spec: &QuadratureSpec) -> Result<f64> {
    let piece_spec = QuadratureSpec {
        abs_tol: spec.abs_tol / 4.0,
        ..*spec
    };
    let mut total = 0.0;
    let mut previous = f64::INFINITY;
    let mut a = start;
    let mut width = scale;
    for step in 0..MAX_TAIL_STEPS {
        let b = a + width;
        let piece = adaptive(f, a, b, &piece_spec)?;
        total += piece;
        let small = piece.abs() <= spec.tail_truncation_mass * total.abs();
        // Keep walking while the increments still grow, e.g. before the mode.
        if step >= 1 && small && piece.abs() <= previous {
            return Ok(total);
        }
        if !total.is_finite() {
            break;
        }
        previous = piece.abs();
        a = b;
        width *= 2.0;
    }
    Err(Error::QuadratureNonConvergence {
        subdivisions: MAX_TAIL_STEPS,
        estimate: total,
        error: previous,
    })
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Segment { a, b, value, error }
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let first = gauss_kronrod(f, a, b);
    if !first.value.is_finite() {
        return Err(Error::Domain(format!("integrand is not finite on [{a}, {b}]")));
    }
    let mut heap = BinaryHeap::new();
    let mut total = first.value;
    let mut error = first.error;
    // Segments too narrow to split further keep their error here.
    let mut frozen_error = 0.0;
    heap.push(first);

    let mut subdivisions = 1;
    loop {
        if error <= spec.abs_tol.max(spec.rel_tol * total.abs()) {
            return Ok(total);
        }
        if subdivisions >= spec.max_subdivisions {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            frozen_error += worst.error;
            if heap.is_empty() {
                break;
            }
            continue;
        }
        let left = gauss_kronrod(f, worst.a, mid);
        let right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        heap.push(left);
        heap.push(right);
        subdivisions += 1;
        // Recompute rather than update incrementally to avoid drift.
        error = frozen_error + heap.iter().map(|s| s.error).sum::<f64>();
        if !total.is_finite() {
            return Err(Error::Domain(format!("integrand is not finite on [{a}, {b}]")));
        }
    }
    Err(Error::QuadratureNonConvergence {
        subdivisions,
        estimate: total,
        error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn constant_on_unit_interval() {
        assert!((integrate(|_| 1.0, 0.0, 1.0, &spec()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn exponential_half_line() {
        let v = integrate(|x| (-x).exp(), 0.0, f64::INFINITY, &spec()).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn gaussian_whole_line() {
        let v = integrate(|x| (-x * x / 2.0).exp(), f64::NEG_INFINITY, f64::INFINITY, &spec()).unwrap();
        assert!((v - (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-9, "{v}");
    }

    #[test]
    fn narrow_peak_with_scale() {
        let s = 1e-4;
        let f = |x: f64| (-(x - 0.3) * (x - 0.3) / (2.0 * s * s)).exp();
        let v = integrate_scaled(f, f64::NEG_INFINITY, f64::INFINITY, 0.3, s, &spec()).unwrap();
        let exact = s * (2.0 * std::f64::consts::PI).sqrt();
        assert!(((v - exact) / exact).abs() < 1e-9);
    }

    #[test]
    fn endpoint_singularity() {
        // int_0^1 x^(-1/2) dx = 2
        let v = integrate(|x: f64| x.powf(-0.5), 0.0, 1.0, &spec()).unwrap();
        assert!((v - 2.0).abs() < 1e-8, "{v}");
    }

    #[test]
    fn reversed_bounds_negate() {
        let v = integrate(|x| x * x, 1.0, 0.0, &spec()).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn non_convergence_is_an_error() {
        let tight = QuadratureSpec::new(1e-14, 1e-300, 3, 1e-14).unwrap();
        let r = integrate(|x: f64| (50.0 * x).sin().abs(), 0.0, 10.0, &tight);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn non_decaying_tail_is_an_error() {
        let r = integrate(|_| 1.0, 0.0, f64::INFINITY, &spec());
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn spec_invariants() {
        assert!(QuadratureSpec::new(0.0, 1e-12, 10, 1e-12).is_err());
        assert!(QuadratureSpec::new(1e-8, 1e-12, 0, 1e-12).is_err());
        assert!(QuadratureSpec::new(1e-8, 1e-12, 10, 1e-6).is_err());
        assert!(QuadratureSpec::new(1e-8, 1e-12, 10, 1e-8).is_ok());
    }
}
