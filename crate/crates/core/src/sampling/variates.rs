//! Normal, gamma and inverse Gaussian variates.
//!
//! Normals use inversion of the CDF, so every normal draw consumes exactly
//! one uniform and streams stay aligned across models that share a seed.

use super::RngStream;

/// Wichura's AS241 (PPND16) inverse of the standard normal CDF, accurate to
/// about 1e-16 relative.
pub fn inverse_normal_cdf(p: f64) -> f64 {
    const A: [f64; 8] = [
        3.387_132_872_796_366_608,
        133.141_667_891_784_377_45,
        1_971.590_950_306_551_442_7,
        13_731.693_765_509_461_125,
        45_921.953_931_549_871_457,
        67_265.770_927_008_700_853,
        33_430.575_583_588_128_105,
        2_509.080_928_730_122_672_7,
    ];
    const B: [f64; 8] = [
        1.0,
        42.313_330_701_600_911_252,
        687.187_007_492_057_908_3,
        5_394.196_021_424_751_107_7,
        21_213.794_301_586_595_867,
        39_307.895_800_092_710_61,
        28_729.085_735_721_942_674,
        5_226.495_278_852_545_925,
    ];
    const C: [f64; 8] = [
        1.423_437_110_749_683_577_34,
        4.630_337_846_156_545_295_9,
        5.769_497_221_460_691_405_5,
        3.647_848_324_763_204_605_04,
        1.270_458_252_452_368_382_58,
        0.241_780_725_177_450_611_77,
        0.022_723_844_989_269_184_583_3,
        7.745_450_142_783_414_076_4e-4,
    ];
    const D: [f64; 8] = [
        1.0,
        2.053_191_626_637_758_821_87,
        1.676_384_830_183_803_849_4,
        0.689_767_334_985_100_004_55,
        0.148_103_976_427_480_074_59,
        0.015_198_666_563_616_457_196_6,
        5.475_938_084_995_344_946e-4,
        1.050_750_071_644_416_843_24e-9,
    ];
    const E: [f64; 8] = [
        6.657_904_643_501_103_777_2,
        5.463_784_911_164_114_369_9,
        1.784_826_539_917_291_335_8,
        0.296_560_571_828_504_891_23,
        0.026_532_189_526_576_123_093,
        0.001_242_660_947_388_078_438_6,
        2.711_555_568_743_487_578_15e-5,
        2.010_334_399_292_288_132_65e-7,
    ];
    const F: [f64; 8] = [
        1.0,
        0.599_832_206_555_887_937_69,
        0.136_929_880_922_735_805_31,
        0.014_875_361_290_850_614_852_5,
        7.868_691_311_456_132_591e-4,
        1.846_318_317_510_054_681_8e-5,
        1.421_511_758_316_445_888_7e-7,
        2.044_263_103_389_939_785_64e-15,
    ];
    fn poly(c: &[f64; 8], x: f64) -> f64 {
        c.iter().rev().fold(0.0, |acc, &v| acc * x + v)
    }

    let q = p - 0.5;
    if q.abs() <= 0.425 {
        let r = 0.180_625 - q * q;
        return q * poly(&A, r) / poly(&B, r);
    }
    let tail = if q < 0.0 { p } else { 1.0 - p };
    let r = (-tail.ln()).sqrt();
    let v = if r <= 5.0 {
        let r = r - 1.6;
        poly(&C, r) / poly(&D, r)
    } else {
        let r = r - 5.0;
        poly(&E, r) / poly(&F, r)
    };
    if q < 0.0 {
        -v
    } else {
        v
    }
}

#[inline]
pub fn sample_standard_normal(rng: &mut RngStream) -> f64 {
    inverse_normal_cdf(rng.uniform())
}

/// Gamma variate with the given shape and rate (mean `shape / rate`).
///
/// Marsaglia–Tsang squeeze for `shape >= 1`; for `shape < 1` the draw is
/// `G(shape + 1) * U^(1 / shape)`. For extremely small shapes the result can
/// underflow to 0.
pub fn sample_gamma(rng: &mut RngStream, shape: f64, rate: f64) -> f64 {
    debug_assert!(shape > 0.0 && rate > 0.0);
    if shape < 1.0 {
        let g = marsaglia_tsang(rng, shape + 1.0);
        let log_u = rng.uniform().ln();
        return (g.ln() + log_u / shape).exp() / rate;
    }
    marsaglia_tsang(rng, shape) / rate
}

fn marsaglia_tsang(rng: &mut RngStream, shape: f64) -> f64 {
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = sample_standard_normal(rng);
        let v = 1.0 + c * x;
        if v <= 0.0 {
            continue;
        }
        let v = v * v * v;
        let u = rng.uniform();
        let x2 = x * x;
        if u < 1.0 - 0.0331 * x2 * x2 {
            return d * v;
        }
        if u.ln() < 0.5 * x2 + d * (1.0 - v + v.ln()) {
            return d * v;
        }
    }
}

/// Inverse Gaussian variate IG(mean, shape), by the Michael–Schucany–Haas
/// transformation. Consumes exactly two uniforms.
pub fn sample_inverse_gaussian(rng: &mut RngStream, mean: f64, shape: f64) -> f64 {
    debug_assert!(mean > 0.0 && shape > 0.0);
    let n = sample_standard_normal(rng);
    let y = mean * n * n;
    // Smaller root of the chi-square transformation,
    // mean + mean / (2 shape) * (y - sqrt(4 shape y + y^2)), rearranged to
    // avoid cancellation.
    let x = mean * 2.0 * shape / (2.0 * shape + y + (y * (y + 4.0 * shape)).sqrt());
    let u = rng.uniform();
    if u * (mean + x) <= mean {
        x
    } else {
        mean * mean / x
    }
}
