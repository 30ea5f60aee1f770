//! Variance gamma Asian call simulated two ways: Brownian motion on a gamma
//! clock, and a difference of two gamma processes. Both describe the same
//! process, so prices agree up to sampling error.

use levy_mc::cli::{vg_lecuyer_params, vg_table_params};
use levy_mc::measures::risk_neutralize;
use levy_mc::pricing::price_mc;
use levy_mc::sampling::simulate_paths;
use levy_mc::stats::{ks_two_sample_rejects, ks_two_sample_statistic};
use levy_mc::{MarketData, MeasureKind, PathGrid, Payoff, Scheme};

fn main() -> levy_mc::Result<()> {
    let market = MarketData::new(100.0, 0.1, 1.0)?;
    let grid = PathGrid::new(1.0, 16)?;
    let n = 50_000;

    let rnm = risk_neutralize(vg_lecuyer_params(), &market, MeasureKind::MeanCorrect)?;
    let payoff = Payoff::AsianArithmeticCall { strike: 101.0 };
    for (scheme, seed) in [(Scheme::Bgss, 1), (Scheme::Dg, 2)] {
        let mc = price_mc(&rnm, &payoff, scheme, grid, n, seed)?;
        println!(
            "sigma 0.12136, nu 0.3, K = 101, {:<4}: {:.4} +/- {:.4}",
            scheme.as_str(),
            mc.estimate,
            mc.std_error
        );
    }

    for measure in [MeasureKind::Esscher, MeasureKind::MeanCorrect] {
        let rnm = risk_neutralize(vg_table_params(), &market, measure)?;
        let bgss = simulate_paths(&rnm, Scheme::Bgss, grid, 10_000, 3)?.terminal_values();
        let dg = simulate_paths(&rnm, Scheme::Dg, grid, 10_000, 4)?.terminal_values();
        let d = ks_two_sample_statistic(&bgss, &dg);
        println!(
            "sigma 1, nu 1, {}: two-sample KS on S_T, D = {d:.4}, rejected at 1%: {}",
            measure.as_str(),
            ks_two_sample_rejects(d, bgss.len(), dg.len(), 0.01)
        );
        for k in [95.0, 101.0, 105.0] {
            let payoff = Payoff::AsianArithmeticCall { strike: k };
            let a = price_mc(&rnm, &payoff, Scheme::Bgss, grid, n, 1001)?;
            let b = price_mc(&rnm, &payoff, Scheme::Dg, grid, n, 2002)?;
            println!(
                "  K = {k}: bgss {:.3} +/- {:.3}  dg {:.3} +/- {:.3}",
                a.estimate, a.std_error, b.estimate, b.std_error
            );
        }
    }
    Ok(())
}
