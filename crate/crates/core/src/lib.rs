//! Monte Carlo pricing under exponential Lévy models.
//!
//! The crate covers the normal inverse Gaussian (NIG) and variance gamma (VG)
//! models, two ways of building a risk-neutral measure for them (the Esscher
//! transform and the mean-correcting drift), seeded path simulation with
//! reproducible per-path random streams, and Monte Carlo pricing of European
//! and arithmetic-average Asian calls. A closed-form NIG European call is
//! provided as a reference for the simulator.
//!
//! Module map:
//!
//! * [`special_fn`]: Bessel K, log-gamma, adaptive quadrature, Brent root finding.
//! * [`levy_models`]: parameter types, densities, cumulants.
//! * [`measures`]: Esscher and mean-correcting risk-neutralization.
//! * [`sampling`]: random streams, variate generators, path simulation.
//! * [`pricing`]: payoffs, the Monte Carlo estimator, the NIG closed form.
//! * [`cli`]: run configurations, table presets, the experiment runner and CSV output.
//! * [`stats`]: small statistics helpers (moments, Kolmogorov–Smirnov).

// `!(x > 0.0)` style guards are meant to reject NaN as well.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Coefficient tables are kept as published.
#![allow(clippy::excessive_precision)]

pub mod cli;
pub mod error;
pub mod levy_models;
pub mod measures;
pub mod pricing;
pub mod sampling;
pub mod special_fn;
pub mod stats;

pub use error::{Error, Result};
pub use levy_models::{GammaParams, LevyModel, NigParams, VgMeanVarianceParams, VgParams};
pub use measures::{EsscherSolution, MarketData, MeasureKind, RiskNeutralModel};
pub use pricing::{McResult, Payoff};
pub use sampling::{PathGrid, PathSet, RngStream, Scheme};
