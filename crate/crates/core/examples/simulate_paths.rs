//! Reproducible random streams, the variate generators, and path simulation
//! under each scheme.

use levy_mc::cli::{nig_table_params, vg_lecuyer_params};
use levy_mc::measures::risk_neutralize;
use levy_mc::sampling::{sample_gamma, sample_inverse_gaussian, sample_standard_normal, simulate_paths};
use levy_mc::stats::{mean, variance};
use levy_mc::{MarketData, MeasureKind, PathGrid, RngStream, Scheme};

fn main() -> levy_mc::Result<()> {
    // Stream (seed, id) always yields the same numbers, whatever ran before.
    let mut rng = RngStream::new(7, 3);
    println!(
        "stream (7, 3): {:.6} {:.6} {:.6}",
        rng.uniform(),
        rng.uniform(),
        rng.uniform()
    );
    println!(
        "N(0,1) {:+.6}  Gamma(0.5, 2) {:.6}  IG(1, 4) {:.6}",
        sample_standard_normal(&mut rng),
        sample_gamma(&mut rng, 0.5, 2.0),
        sample_inverse_gaussian(&mut rng, 1.0, 4.0)
    );

    let market = MarketData::new(36.0, 0.05, 1.0 / 12.0)?;
    let grid = PathGrid::new(market.maturity, 4)?;
    let rnm = risk_neutralize(nig_table_params(), &market, MeasureKind::MeanCorrect)?;
    let set = simulate_paths(&rnm, Scheme::IgSubordination, grid, 3, 11)?;
    println!("NIG paths on dates {:.4?}", grid.dates());
    for p in set.paths() {
        println!("  {p:.4?}");
    }

    let market = MarketData::new(100.0, 0.1, 1.0)?;
    let grid = PathGrid::new(1.0, 16)?;
    let rnm = risk_neutralize(vg_lecuyer_params(), &market, MeasureKind::MeanCorrect)?;
    for scheme in [Scheme::Bgss, Scheme::Dg] {
        let set = simulate_paths(&rnm, scheme, grid, 20_000, 5)?;
        let x: Vec<f64> = set.terminal_values().iter().map(|s| (s / market.s0).ln()).collect();
        println!(
            "VG {:<4} ln(S_T/S_0): mean {:+.5} variance {:.5} (exact variance {:.5})",
            scheme.as_str(),
            mean(&x),
            variance(&x),
            rnm.model.variance(1.0)
        );
    }
    Ok(())
}
