use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use levy_mc::cli::{
    apply_overrides, parse_config, preset_configs, run_all, write_csv, write_csv_to, ConfigError, PayoffKind,
    RunConfig, Selection,
};
use levy_mc::{MeasureKind, Scheme};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PresetArg {
    NigTable,
    VgTable,
    VgLecuyer,
}

impl PresetArg {
    fn name(self) -> &'static str {
        match self {
            PresetArg::NigTable => "nig-table",
            PresetArg::VgTable => "vg-table",
            PresetArg::VgLecuyer => "vg-lecuyer",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MeasureArg {
    Esscher,
    #[value(alias = "mean_correct")]
    MeanCorrect,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    #[value(alias = "ig_subordination")]
    Ig,
    Bgss,
    Dg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PayoffArg {
    European,
    Asian,
}

/// Monte Carlo option prices under exponential NIG and VG models.
#[derive(Debug, Parser)]
#[command(name = "price", version)]
struct Args {
    /// JSON run configuration.
    #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
    config: Option<PathBuf>,
    /// Built-in experiment table.
    #[arg(long, value_enum)]
    preset: Option<PresetArg>,
    /// Number of Monte Carlo paths per row.
    #[arg(long)]
    paths: Option<usize>,
    /// Base seed; path i always uses random stream (seed, i).
    #[arg(long)]
    seed: Option<u64>,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Restrict or override the martingale measure.
    #[arg(long, value_enum)]
    measure: Option<MeasureArg>,
    /// Restrict or override the simulation scheme.
    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,
    /// Payoff layer for presets (configs carry their own).
    #[arg(long, value_enum)]
    payoff: Option<PayoffArg>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    threads: Option<usize>,
}

fn load(args: &Args) -> Result<Vec<RunConfig>, ConfigError> {
    let measure = args.measure.map(|m| match m {
        MeasureArg::Esscher => MeasureKind::Esscher,
        MeasureArg::MeanCorrect => MeasureKind::MeanCorrect,
    });
    let scheme = args.scheme.map(|s| match s {
        SchemeArg::Ig => Scheme::IgSubordination,
        SchemeArg::Bgss => Scheme::Bgss,
        SchemeArg::Dg => Scheme::Dg,
    });
    let payoff = args.payoff.map(|p| match p {
        PayoffArg::European => PayoffKind::European,
        PayoffArg::Asian => PayoffKind::Asian,
    });
    let mut cfgs = match (&args.config, args.preset) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
                path: path.display().to_string(),
                source,
            })?;
            let mut cfg = apply_overrides(parse_config(&text)?, measure, scheme)?;
            if let Some(p) = payoff {
                cfg.payoff = p;
            }
            vec![cfg]
        }
        (None, Some(preset)) => preset_configs(
            preset.name(),
            Selection {
                measure,
                scheme,
                payoff,
            },
        )?,
        (None, None) => unreachable!("clap requires one of --config or --preset"),
    };
    for cfg in &mut cfgs {
        if let Some(n) = args.paths {
            if n == 0 {
                return Err(ConfigError::Invalid {
                    field: "paths".into(),
                    message: "need at least one path".into(),
                });
            }
            cfg.n_paths = n;
        }
        if let Some(seed) = args.seed {
            cfg.seed = seed;
        }
    }
    Ok(cfgs)
}

fn run(args: &Args) -> Result<ExitCode, ConfigError> {
    let cfgs = load(args)?;
    let out = args.out.clone().or_else(|| cfgs[0].output.clone().map(PathBuf::from));
    let n_rows: usize = cfgs.iter().map(|c| c.strikes.len()).sum();
    eprintln!("pricing {n_rows} row(s)");
    let rows = run_all(&cfgs);
    for row in rows.iter().filter(|r| !r.is_ok()) {
        eprintln!(
            "warning: K={} {} {} row failed: {}",
            row.strike, row.measure, row.scheme, row.status
        );
    }
    match out {
        Some(path) => write_csv(&rows, &path)?,
        None => write_csv_to(&rows, std::io::stdout().lock())?,
    }
    if rows.len() == 1 && !rows[0].is_ok() {
        return Ok(ExitCode::from(2));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&args) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
