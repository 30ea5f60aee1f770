//! Numerical kernels used by the model math.

mod bessel;
mod gamma;
mod quadrature;
mod roots;

pub use bessel::{bessel_k, bessel_k_eval, bessel_k_scaled, BesselK};
pub use gamma::log_gamma;
pub use quadrature::{integrate, integrate_scaled, QuadratureSpec};
pub use roots::{find_root, DEFAULT_ROOT_TOL};
