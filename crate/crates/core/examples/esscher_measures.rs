//! Building risk-neutral models: Esscher transform and mean-correcting drift.

use levy_mc::cli::{nig_table_params, vg_lecuyer_params, vg_table_params};
use levy_mc::measures::{mean_correct_omega, nig_esscher, risk_neutralize, vg_esscher};
use levy_mc::{LevyModel, MarketData, MeasureKind, NigParams};

fn show(label: &str, model: LevyModel, market: &MarketData) {
    for measure in [MeasureKind::Esscher, MeasureKind::MeanCorrect] {
        match risk_neutralize(model, market, measure) {
            Ok(rnm) => {
                let check = rnm.log_price_cumulant(1.0).map(|k| k - market.r).unwrap_or(f64::NAN);
                println!(
                    "{label:>10} {:<12} drift {:+.6e}  omega {:+.6e}  martingale gap {check:+.1e}",
                    measure.as_str(),
                    rnm.drift_rate,
                    rnm.omega
                );
            }
            Err(e) => println!("{label:>10} {:<12} {e}", measure.as_str()),
        }
    }
}

fn main() -> levy_mc::Result<()> {
    let nig = nig_table_params();
    for r in [0.1, 0.05] {
        let market = MarketData::new(36.0, r, 1.0 / 12.0)?;
        let sol = nig_esscher(&nig, &market)?;
        println!(
            "NIG r = {r}: theta* = {:.6}, residual {:.1e}",
            sol.theta_star, sol.residual
        );
        show("nig", nig.into(), &market);
    }

    let sol = vg_esscher(&vg_table_params())?;
    println!(
        "VG table: theta* = {:.10}, tilted {:?}",
        sol.theta_star, sol.risk_neutral
    );
    println!(
        "VG validation point: omega = {:.12}",
        mean_correct_omega(&vg_lecuyer_params().into())?
    );
    let market = MarketData::new(100.0, 0.1, 1.0)?;
    show("vg table", vg_table_params().into(), &market);

    // Symmetric, light-tailed enough that no tilt reaches r = 0.1.
    let thin = NigParams::new(2.0, 0.0, 0.0, 0.01)?;
    show("thin nig", thin.into(), &market);
    Ok(())
}
