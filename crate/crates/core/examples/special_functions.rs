//! Bessel K, log-gamma, adaptive quadrature and Brent root finding.

use levy_mc::special_fn::{
    bessel_k, bessel_k_eval, bessel_k_scaled, find_root, integrate_scaled, log_gamma, QuadratureSpec,
};

fn main() -> levy_mc::Result<()> {
    println!("K_nu(x)");
    for &(nu, x) in &[(0.0, 0.1), (1.0, 1.9), (2.5, 10.0), (1.0, 700.0)] {
        println!("  K_{nu}({x}) = {:.15e}", bessel_k(nu, x)?);
    }

    // Far in the tail K underflows; the scaled form e^x K stays representable.
    let deep = bessel_k_eval(1.0, 800.0)?;
    println!(
        "  K_1(800) = {} (underflow {}), e^800 K_1(800) = {:.15e}",
        deep.value,
        deep.underflow,
        bessel_k_scaled(1.0, 800.0)?
    );

    println!("ln Gamma(x)");
    for &x in &[0.5, 1.0, 10.0, 171.5] {
        println!("  ln Gamma({x}) = {:.15}", log_gamma(x)?);
    }

    let spec = QuadratureSpec::default();
    let gauss = integrate_scaled(
        |x: f64| (-x * x / 2.0).exp(),
        f64::NEG_INFINITY,
        f64::INFINITY,
        0.0,
        1.0,
        &spec,
    )?;
    println!(
        "integral of exp(-x^2/2) over R = {gauss:.15} (sqrt(2 pi) = {:.15})",
        (2.0 * std::f64::consts::PI).sqrt()
    );

    let root = find_root(|x| x.cos() - x, 0.0, 1.0, 1e-14)?;
    println!("cos(x) = x at x = {root:.15}");
    Ok(())
}
