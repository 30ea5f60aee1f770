//! NIG process: density, cumulant, moments and Lévy density.

use levy_mc::cli::nig_table_params;
use levy_mc::special_fn::{integrate_scaled, QuadratureSpec};

fn main() -> levy_mc::Result<()> {
    let p = nig_table_params();
    let t = 1.0;
    println!("NIG {p:?}");
    println!("mean {:.6e}, variance {:.6e}", p.mean(t), p.variance(t));

    let spec = QuadratureSpec::default();
    let h = p.variance(t).sqrt();
    let mass = integrate_scaled(
        |x| p.density(x, t),
        f64::NEG_INFINITY,
        f64::INFINITY,
        p.mean(t),
        h,
        &spec,
    )?;
    println!("density mass {mass:.12}");

    for x in [-0.03, -0.01, 0.0, 0.01, 0.03] {
        println!(
            "  f({x:+.2}) = {:10.4}   nu({x:+.2}) = {}",
            p.density(x, t),
            match p.levy_density(x) {
                Ok(v) => format!("{v:.4e}"),
                Err(_) => "undefined".into(),
            }
        );
    }

    println!("cumulant kappa(theta), finite for |beta + theta| <= alpha:");
    for theta in [1.0, 10.0, p.alpha - p.beta, p.alpha - p.beta + 1.0] {
        match p.cumulant(theta) {
            Ok(k) => println!("  kappa({theta:.2}) = {k:.6e}"),
            Err(e) => println!("  kappa({theta:.2}): {e}"),
        }
    }
    Ok(())
}
