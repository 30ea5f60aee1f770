//! NIG European call: closed form against Monte Carlo, in a regime where
//! plain simulation is reliable and in one where it is not.

use levy_mc::cli::nig_table_params;
use levy_mc::measures::risk_neutralize;
use levy_mc::pricing::{nig_call_closed_form, nig_tail_probability, price_mc};
use levy_mc::{LevyModel, MarketData, MeasureKind, PathGrid, Payoff, Scheme};

fn main() -> levy_mc::Result<()> {
    let p = nig_table_params();
    let n = 200_000;
    for r in [0.05, 0.1] {
        let market = MarketData::new(36.0, r, 1.0 / 12.0)?;
        let rnm = risk_neutralize(p, &market, MeasureKind::Esscher)?;
        let LevyModel::Nig(q) = rnm.model else { unreachable!() };
        println!("r = {r}: Esscher NIG alpha - beta = {:.3}", q.alpha - q.beta);
        // A single step is enough for a terminal payoff.
        let grid = PathGrid::new(market.maturity, 1)?;
        for k in [34.0, 35.0, 36.0, 37.0] {
            let closed = nig_call_closed_form(&rnm, k)?;
            let mc = price_mc(
                &rnm,
                &Payoff::EuropeanCall { strike: k },
                Scheme::IgSubordination,
                grid,
                n,
                2024,
            )?;
            println!(
                "  K = {k}: closed {closed:.5}  mc {:.5} +/- {:.5}  z {:+.2}",
                mc.estimate,
                mc.std_error,
                (closed - mc.estimate) / mc.std_error
            );
        }
        // With alpha - beta near 1, S_T has no second moment and rare large
        // log-returns carry a share of E[S_T] that few samples ever see.
        for x in [1.0, 5.0] {
            println!("  P(X_T > {x}) = {:.3e}", nig_tail_probability(&q, market.maturity, x)?);
        }
    }
    Ok(())
}
