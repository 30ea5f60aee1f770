//! Variance gamma: the two parametrizations, the gamma-difference form,
//! and the density near its peak.

use levy_mc::cli::{vg_lecuyer_params, vg_table_params};
use levy_mc::VgMeanVarianceParams;

fn main() -> levy_mc::Result<()> {
    let mv = VgMeanVarianceParams::new(-0.1436, 0.12136, 0.3)?;
    let vg = mv.to_vg();
    println!("{mv:?}\n  -> {vg:?}");
    let (x0, back) = vg.to_mean_variance();
    println!("  <- x0 = {x0}, {back:?}");

    let d = mv.gamma_difference();
    println!("as a difference of gammas: {d:?}");

    for (name, p) in [("validation", vg_lecuyer_params()), ("table", vg_table_params())] {
        println!(
            "{name}: mean(1) = {:.6}, variance(1) = {:.6}",
            p.mean(1.0),
            p.variance(1.0)
        );
        for t in [1.0, 1.0 / 16.0] {
            // For lambda t <= 1/2 the density has an integrable pole at x0 t.
            let peak = p.x0 * t;
            let near = p.density(peak + 1e-6, t)?;
            println!(
                "  t = {t:.4}: lambda t = {:.4}, f(peak + 1e-6) = {near:.4e}",
                p.lambda * t
            );
        }
    }

    let phi = mv.char_function(2.0, 1.0);
    println!("E[exp(2i X_1)] = {:.6} {:+.6}i", phi.re, phi.im);
    Ok(())
}
