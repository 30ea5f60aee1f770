//! Seeded variates and path simulation.

mod paths;
mod rng;
mod variates;

pub use paths::{
    simulate_nig_path, simulate_paths, simulate_vg_path_bgss, simulate_vg_path_dg, PathGrid, PathSet, PathSimulator,
    Scheme,
};
pub use rng::RngStream;
pub use variates::{inverse_normal_cdf, sample_gamma, sample_inverse_gaussian, sample_standard_normal};
