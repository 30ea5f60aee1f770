//! Experiment runner: JSON run configurations, built-in tables and CSV output.

mod config;
mod presets;
mod runner;

pub use config::{
    apply_overrides, parse_config, ConfigError, ModelKind, PayoffKind, RunConfig, DEFAULT_PATHS, DEFAULT_SEED,
    DEFAULT_STEPS,
};
pub use presets::{nig_table_params, preset_configs, vg_lecuyer_params, vg_table_params, Selection, PRESET_NAMES};
pub use runner::{
    read_csv, read_csv_from, run_all, run_experiment, status_code, write_csv, write_csv_to, ResultRow, CSV_HEADER,
    STATUS_OK,
};
