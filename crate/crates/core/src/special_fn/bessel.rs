//! Modified Bessel function of the second kind, `K_nu(x)`, for real order.
//!
//! The order is split as `nu = n + mu` with `|mu| <= 1/2`. `K_mu` and
//! `K_{mu+1}` come from Temme's series when `x < 2` and from Steed's
//! continued fraction otherwise; the remaining `n` orders are reached by the
//! (stable) forward recurrence `K_{v+1} = K_{v-1} + (2v/x) K_v`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Below this argument the Temme series is used, above it the continued
/// fraction. Both agree to ~1e-15 around the crossover.
const SERIES_CROSSOVER: f64 = 2.0;
const EPS: f64 = 1e-16;
const MAX_ITER: usize = 100_000;

/// Taylor coefficients of `1/Gamma(z) = sum_k c_k z^k`, k = 1..=26.
const RGAMMA_TAYLOR: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_860_61,
    -0.655_878_071_520_253_881_08,
    -0.042_002_635_034_095_235_529,
    0.166_538_611_382_291_489_5,
    -0.042_197_734_555_544_336_748,
    -0.009_621_971_527_876_973_562_1,
    0.007_218_943_246_663_099_542_4,
    -0.001_165_167_591_859_065_112_1,
    -0.000_215_241_674_114_950_972_82,
    0.000_128_050_282_388_116_186_15,
    -0.000_020_134_854_780_788_238_656,
    -1.250_493_482_142_670_657_3e-6,
    1.133_027_231_981_695_882_4e-6,
    -2.056_338_416_977_607_103_5e-7,
    6.116_095_104_481_415_817_9e-9,
    5.002_007_644_469_222_930_1e-9,
    -1.181_274_570_487_020_144_6e-9,
    1.043_426_711_691_100_510_5e-10,
    7.782_263_439_905_071_254e-12,
    -3.696_805_618_642_205_708_2e-12,
    5.100_370_287_454_475_979e-13,
    -2.058_326_053_566_506_783_2e-14,
    -5.348_122_539_423_017_982_4e-15,
    1.226_778_628_238_260_790_2e-15,
    -1.181_259_301_697_458_769_5e-16,
];

/// A Bessel K evaluation together with an underflow flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselK {
    pub value: f64,
    /// Set when `K_nu(x)` is below the smallest normal `f64` and `value` was
    /// flushed to zero. The scaled function is still accurate in that case.
    pub underflow: bool,
}

/// `K_order(x)` with underflow reporting.
pub fn bessel_k_eval(order: f64, x: f64) -> Result<BesselK> {
    let scaled = bessel_k_scaled(order, x)?;
    let value = scaled * (-x).exp();
    if value < f64::MIN_POSITIVE {
        Ok(BesselK {
            value: 0.0,
            underflow: true,
        })
    } else {
        Ok(BesselK {
            value,
            underflow: false,
        })
    }
}

/// `K_order(x)`. Returns 0 once the result underflows; see [`bessel_k_eval`]
/// for the flag.
pub fn bessel_k(order: f64, x: f64) -> Result<f64> {
    bessel_k_eval(order, x).map(|k| k.value)
}

/// The exponentially scaled function `e^x K_order(x)`, which stays
/// representable for arguments where `K` itself underflows.
pub fn bessel_k_scaled(order: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_k requires 0 < x < inf, got x = {x}")));
    }
    if !order.is_finite() {
        return Err(Error::Domain(format!("bessel_k order must be finite, got {order}")));
    }
    // K_{-nu} = K_nu
    let order = order.abs();
    let n = (order + 0.5).floor();
    let mu = order - n;

    let (mut k_mu, mut k_mu1) = if x < SERIES_CROSSOVER {
        let (k0, k1) = temme_series(mu, x);
        let ex = x.exp();
        (k0 * ex, k1 * ex)
    } else {
        steed_scaled(mu, x)
    };

    let two_over_x = 2.0 / x;
    for i in 1..=(n as usize) {
        let next = (mu + i as f64) * two_over_x * k_mu1 + k_mu;
        k_mu = k_mu1;
        k_mu1 = next;
        if !k_mu.is_finite() {
            break;
        }
    }
    Ok(k_mu)
}

/// `1/Gamma(1+mu)` and `1/Gamma(1-mu)` together with Temme's
/// `gamma1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)` and
/// `gamma2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2`, for `|mu| <= 1/2`.
fn temme_gammas(mu: f64) -> (f64, f64, f64, f64) {
    // 1/Gamma(1+mu) = sum_k c_k mu^(k-1): odd k give the even part (gamma2),
    // even k the odd part (-mu * gamma1).
    let mu2 = mu * mu;
    let mut gamma1 = 0.0;
    let mut gamma2 = 0.0;
    let mut pow = 1.0;
    for pair in RGAMMA_TAYLOR.chunks(2) {
        gamma2 += pair[0] * pow;
        if let Some(c) = pair.get(1) {
            gamma1 -= c * pow;
        }
        pow *= mu2;
    }
    let rgamma_plus = gamma2 - mu * gamma1;
    let rgamma_minus = gamma2 + mu * gamma1;
    (gamma1, gamma2, rgamma_plus, rgamma_minus)
}

/// Unscaled `(K_mu(x), K_{mu+1}(x))` for `|mu| <= 1/2`, `0 < x < 2`.
fn temme_series(mu: f64, x: f64) -> (f64, f64) {
    let half_x = 0.5 * x;
    let pi_mu = PI * mu;
    let fact = if pi_mu.abs() < EPS { 1.0 } else { pi_mu / pi_mu.sin() };
    let d = -half_x.ln();
    let e = mu * d;
    let fact2 = if e.abs() < EPS { 1.0 } else { e.sinh() / e };
    let (gamma1, gamma2, rgamma_plus, rgamma_minus) = temme_gammas(mu);

    let mut ff = fact * (gamma1 * e.cosh() + gamma2 * fact2 * d);
    let mut sum = ff;
    let e = e.exp();
    let mut p = 0.5 * e / rgamma_plus;
    let mut q = 0.5 / (e * rgamma_minus);
    let mut c = 1.0;
    let d = half_x * half_x;
    let mut sum1 = p;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu * mu);
        c *= d / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * EPS {
            break;
        }
    }
    (sum, sum1 * 2.0 / x)
}

/// Scaled `(e^x K_mu(x), e^x K_{mu+1}(x))` for `|mu| <= 1/2`, `x >= 2`.
fn steed_scaled(mu: f64, x: f64) -> (f64, f64) {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < EPS {
            break;
        }
    }
    let h = a1 * h;
    let k_mu = (PI / (2.0 * x)).sqrt() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - h) / x;
    (k_mu, k_mu1)
}
