use levy_mc::levy_models::{NigParams, VgMeanVarianceParams, VgParams};
use levy_mc::measures::{risk_neutralize, MarketData, MeasureKind};
use levy_mc::pricing::nig_tail_probability;
use levy_mc::sampling::{
    inverse_normal_cdf, sample_gamma, sample_inverse_gaussian, sample_standard_normal, simulate_nig_path,
    simulate_paths, simulate_vg_path_bgss, simulate_vg_path_dg, PathGrid, PathSimulator, RngStream, Scheme,
};
use levy_mc::stats::{ks_rejects, ks_statistic, ks_two_sample_rejects, ks_two_sample_statistic, RunningMoments};
use levy_mc::Error;
use statrs::distribution::{ContinuousCDF, Gamma, Normal};

const ALPHA: f64 = 0.01;

fn std_normal() -> Normal {
    Normal::new(0.0, 1.0).unwrap()
}

fn ig_cdf(x: f64, mean: f64, shape: f64) -> f64 {
    let n = std_normal();
    let a = (shape / x).sqrt();
    n.cdf(a * (x / mean - 1.0)) + (2.0 * shape / mean).exp() * n.cdf(-a * (x / mean + 1.0))
}

#[test]
fn streams_are_reproducible_and_distinct() {
    let mut a = RngStream::new(11, 3);
    let mut b = RngStream::new(11, 3);
    let mut c = RngStream::new(11, 4);
    let mut d = RngStream::new(12, 3);
    let xs: Vec<u64> = (0..8).map(|_| a.next_u64()).collect();
    let ys: Vec<u64> = (0..8).map(|_| b.next_u64()).collect();
    assert_eq!(xs, ys);
    assert_ne!(xs, (0..8).map(|_| c.next_u64()).collect::<Vec<_>>());
    assert_ne!(xs, (0..8).map(|_| d.next_u64()).collect::<Vec<_>>());
    let mut u = RngStream::new(0, 0);
    assert!((0..100_000).map(|_| u.uniform()).all(|x| x > 0.0 && x < 1.0));
}

#[test]
fn normal_inverse_matches_statrs_quantiles() {
    let n = std_normal();
    for i in 1..1000 {
        let p = i as f64 / 1000.0;
        assert!((inverse_normal_cdf(p) - n.inverse_cdf(p)).abs() < 1e-9, "p = {p}");
    }
}

#[test]
fn normal_draws_pass_ks() {
    let mut rng = RngStream::new(1, 0);
    let xs: Vec<f64> = (0..20_000).map(|_| sample_standard_normal(&mut rng)).collect();
    let n = std_normal();
    let d = ks_statistic(&xs, |x| n.cdf(x));
    assert!(!ks_rejects(d, xs.len(), ALPHA), "D = {d}");
}

#[test]
fn gamma_draws_pass_ks() {
    for &(shape, rate) in &[(0.05, 2.0), (0.3, 1.0), (1.0, 3.0), (7.5, 0.5)] {
        let mut rng = RngStream::new(2, 0);
        let xs: Vec<f64> = (0..20_000).map(|_| sample_gamma(&mut rng, shape, rate)).collect();
        let g = Gamma::new(shape, rate).unwrap();
        let d = ks_statistic(&xs, |x| g.cdf(x));
        assert!(!ks_rejects(d, xs.len(), ALPHA), "shape {shape}: D = {d}");
    }
}

#[test]
fn inverse_gaussian_draws_pass_ks() {
    for &(mean, shape) in &[(1.0, 0.2), (0.5, 3.0), (1.0e-3, 1.0e-2), (2.0, 400.0)] {
        let mut rng = RngStream::new(3, 0);
        let xs: Vec<f64> = (0..20_000)
            .map(|_| sample_inverse_gaussian(&mut rng, mean, shape))
            .collect();
        let d = ks_statistic(&xs, |x| ig_cdf(x, mean, shape));
        assert!(!ks_rejects(d, xs.len(), ALPHA), "IG({mean}, {shape}): D = {d}");
    }
}

#[test]
fn inverse_gaussian_uses_two_uniforms() {
    let mut a = RngStream::new(4, 0);
    let mut b = RngStream::new(4, 0);
    for _ in 0..1000 {
        sample_inverse_gaussian(&mut a, 0.3, 0.7);
    }
    for _ in 0..2000 {
        b.uniform();
    }
    assert_eq!(a.next_u64(), b.next_u64());
}

#[test]
fn sampler_moments_small_sample() {
    let n = 200_000;
    let mut rng = RngStream::new(5, 0);
    let (shape, rate) = (0.4, 2.0);
    let m: RunningMoments = (0..n).map(|_| sample_gamma(&mut rng, shape, rate)).collect();
    let se = (shape / (rate * rate) / n as f64).sqrt();
    assert!((m.mean - shape / rate).abs() < 4.0 * se);
    let (mean, shape) = (0.7, 1.3);
    let m: RunningMoments = (0..n).map(|_| sample_inverse_gaussian(&mut rng, mean, shape)).collect();
    let se = (mean.powi(3) / shape / n as f64).sqrt();
    assert!((m.mean - mean).abs() < 4.0 * se);
}

#[test]
fn nig_increments_match_density() {
    let p = NigParams::new(15.0, -3.0, 0.02, 0.4).unwrap();
    let market = MarketData::new(1.0, 0.03, 1.0).unwrap();
    let rnm = risk_neutralize(p, &market, MeasureKind::MeanCorrect).unwrap();
    let grid = PathGrid::new(1.0, 4).unwrap();
    let paths = simulate_paths(&rnm, Scheme::IgSubordination, grid, 4000, 9).unwrap();
    // Under mean correction the log-increment is NIG(alpha, beta, mu + (r + omega), delta) over dt.
    let shifted = NigParams {
        mu: p.mu + rnm.drift_rate,
        ..p
    };
    for j in [0, 3] {
        let xs = paths.step_log_increments(market.s0, j);
        let d = ks_statistic(&xs, |x| 1.0 - nig_tail_probability(&shifted, grid.dt(), x).unwrap());
        assert!(!ks_rejects(d, xs.len(), ALPHA), "step {j}: D = {d}");
    }
}

#[test]
fn bgss_and_dg_terminal_laws_agree() {
    let mv = VgMeanVarianceParams::new(-0.1436, 0.12136, 0.3).unwrap();
    let market = MarketData::new(100.0, 0.1, 1.0).unwrap();
    let rnm = risk_neutralize(mv.to_vg(), &market, MeasureKind::MeanCorrect).unwrap();
    let grid = PathGrid::new(1.0, 16).unwrap();
    let a = simulate_paths(&rnm, Scheme::Bgss, grid, 10_000, 21)
        .unwrap()
        .terminal_values();
    let b = simulate_paths(&rnm, Scheme::Dg, grid, 10_000, 22)
        .unwrap()
        .terminal_values();
    let d = ks_two_sample_statistic(&a, &b);
    assert!(!ks_two_sample_rejects(d, a.len(), b.len(), ALPHA), "D = {d}");
}

#[test]
fn single_path_helpers_follow_the_simulator() {
    let market = MarketData::new(36.0, 0.1, 1.0 / 12.0).unwrap();
    let nig = risk_neutralize(
        NigParams::new(81.6, 3.69, -0.000123, 0.0103).unwrap(),
        &market,
        MeasureKind::MeanCorrect,
    )
    .unwrap();
    let vg = risk_neutralize(
        VgParams {
            x0: 1e-8,
            ..VgMeanVarianceParams::new(-0.1436, 1.0, 1.0).unwrap().to_vg()
        },
        &market,
        MeasureKind::Esscher,
    )
    .unwrap();
    let grid = PathGrid::new(market.maturity, 16).unwrap();
    let set = simulate_paths(&nig, Scheme::IgSubordination, grid, 3, 77).unwrap();
    let one = simulate_nig_path(&nig, grid, &mut RngStream::new(77, 2)).unwrap();
    assert_eq!(set.path(2), one.as_slice());
    let set = simulate_paths(&vg, Scheme::Bgss, grid, 2, 5).unwrap();
    assert_eq!(
        set.path(1),
        simulate_vg_path_bgss(&vg, grid, &mut RngStream::new(5, 1))
            .unwrap()
            .as_slice()
    );
    let set = simulate_paths(&vg, Scheme::Dg, grid, 2, 5).unwrap();
    assert_eq!(
        set.path(0),
        simulate_vg_path_dg(&vg, grid, &mut RngStream::new(5, 0))
            .unwrap()
            .as_slice()
    );
    assert!(matches!(
        simulate_vg_path_dg(&nig, grid, &mut RngStream::new(5, 0)),
        Err(Error::IncompatibleScheme { .. })
    ));
    assert!(PathSimulator::new(&vg, Scheme::IgSubordination, grid).is_err());
}

#[test]
fn path_sets_do_not_depend_on_thread_count() {
    let market = MarketData::new(36.0, 0.05, 2.0 / 12.0).unwrap();
    let rnm = risk_neutralize(
        NigParams::new(81.6, 3.69, -0.000123, 0.0103).unwrap(),
        &market,
        MeasureKind::Esscher,
    )
    .unwrap();
    let grid = PathGrid::new(market.maturity, 16).unwrap();
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| simulate_paths(&rnm, Scheme::IgSubordination, grid, 5000, 7).unwrap())
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn grid_dates_end_exactly_at_maturity() {
    let grid = PathGrid::new(1.0 / 12.0, 16).unwrap();
    let dates = grid.dates();
    assert_eq!(dates.len(), 16);
    assert_eq!(*dates.last().unwrap(), 1.0 / 12.0);
    assert!(dates.windows(2).all(|w| w[0] < w[1]));
    assert!(PathGrid::new(1.0, 0).is_err());
    assert!(PathGrid::new(0.0, 4).is_err());
}

#[test]
fn scheme_names_and_compatibility() {
    let s: Scheme = serde_json::from_str("\"ig\"").unwrap();
    assert_eq!(s, Scheme::IgSubordination);
    assert_eq!(Scheme::Dg.to_string(), "dg");
}
