//! lzest: tabulates estimation information for a driven two-level system.
//!
//! Every data command writes one table (CSV or JSON) plus a `.meta.json`
//! sidecar holding the fully resolved configuration and integrator
//! diagnostics. Exit codes: 0 success, 2 configuration error, 3 numerical
//! failure.

mod config;
mod figures;
mod scenario;
mod sweep;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{FormatArg, RunArgs, ScenarioKind};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Rejected flags, config file entries, or parameter domains.
    #[error("{0}")]
    Config(String),
    /// The requested run is valid but the integrator could not finish it.
    #[error("{0}")]
    Numerical(String),
}

#[derive(Parser)]
#[command(
    name = "lzest",
    version,
    about = "Fisher-information tables for swept and driven two-level systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Free linear sweep from the bare upper level
    #[command(allow_negative_numbers = true)]
    Single(RunArgs),
    /// Linear sweep with the saturating control plan
    #[command(allow_negative_numbers = true)]
    SingleControlled(RunArgs),
    /// Free periodic drive from the equal superposition
    #[command(allow_negative_numbers = true)]
    Periodic(RunArgs),
    /// Periodic drive under the frequency control plan
    #[command(allow_negative_numbers = true)]
    PeriodicControlled(RunArgs),
    /// Tabulate the sweep phase functions over a grid of adiabaticity values
    #[command(allow_negative_numbers = true)]
    Specfun(SpecfunArgs),
    /// Emit a preset figure: data files plus a gnuplot script
    Figure(FigureArgs),
    /// Vary one parameter and tabulate the endpoint row per value
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
}

#[derive(clap::Args)]
struct SpecfunArgs {
    /// Lower end of the argument grid
    #[arg(long, default_value_t = 0.0)]
    min: f64,
    /// Upper end of the argument grid
    #[arg(long, default_value_t = 4.0)]
    max: f64,
    /// Number of grid points
    #[arg(long, default_value_t = config::DEFAULT_GRID)]
    grid: usize,
    /// Output data path (sidecar JSON goes next to it)
    #[arg(long, short, default_value = "specfun.csv")]
    out: PathBuf,
    /// Output data format
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(clap::Args)]
struct FigureArgs {
    /// Preset to emit
    #[arg(value_enum)]
    name: figures::FigureName,
    /// Directory receiving the data files and the script
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// Integrator accuracy target
    #[arg(long, default_value_t = config::DEFAULT_TOL)]
    tol: f64,
    /// Number of output samples per curve
    #[arg(long, default_value_t = config::DEFAULT_GRID)]
    grid: usize,
    /// Extra detuned-control curve for fig1 and fig2: the plan's
    /// sweep-rate estimate as a multiple of the true rate
    #[arg(long)]
    control_estimate: Option<f64>,
}

#[derive(clap::Args)]
struct SweepArgs {
    /// Scenario evaluated at each axis point
    #[arg(long, value_enum)]
    scenario: ScenarioKind,
    #[command(flatten)]
    run: RunArgs,
    /// Parameter varied along the sweep: v, delta, t0, t, eps0, amp,
    /// omega, beta, frac, or gamma (sets delta at fixed v)
    #[arg(long)]
    axis: String,
    /// First axis value
    #[arg(long)]
    min: f64,
    /// Last axis value
    #[arg(long)]
    max: f64,
    /// Number of axis points
    #[arg(long, default_value_t = 50)]
    count: usize,
    /// Axis point placement
    #[arg(long, value_enum, default_value = "linear")]
    spacing: sweep::Spacing,
}

fn run_scenario_command(kind: ScenarioKind, args: &RunArgs) -> Result<Vec<PathBuf>, CliError> {
    let cfg = config::resolve(kind, args)?;
    let samples = scenario::sample_grid(&cfg)?;
    let data = scenario::run_scenario(&cfg, &samples)?;
    table::write_output(&cfg.out, cfg.format, &cfg, &data)?;
    Ok(vec![cfg.out])
}

fn run_specfun_command(args: &SpecfunArgs) -> Result<Vec<PathBuf>, CliError> {
    if !args.min.is_finite() || !args.max.is_finite() || !(args.min <= args.max) {
        return Err(CliError::Config(format!(
            "field min/max: need finite min <= max, got {} and {}",
            args.min, args.max
        )));
    }
    if !(2..=config::GRID_MAX).contains(&args.grid) {
        return Err(CliError::Config(format!(
            "field grid: {} outside [2, {}]",
            args.grid,
            config::GRID_MAX
        )));
    }
    let grid = scenario::linspace(args.min, args.max, args.grid);
    let data = scenario::run_specfun(&grid)?;

    #[derive(serde::Serialize)]
    struct SpecfunConfig<'a> {
        min: f64,
        max: f64,
        grid: usize,
        format: FormatArg,
        out: &'a PathBuf,
    }
    let cfg = SpecfunConfig {
        min: args.min,
        max: args.max,
        grid: args.grid,
        format: args.format,
        out: &args.out,
    };
    table::write_output(&args.out, args.format, &cfg, &data)?;
    Ok(vec![args.out.clone()])
}

fn run_figure_command(args: &FigureArgs) -> Result<Vec<PathBuf>, CliError> {
    if !(dynamics::TOL_MIN..=dynamics::TOL_MAX).contains(&args.tol) {
        return Err(CliError::Config(format!(
            "field tol: {} outside [{}, {}]",
            args.tol,
            dynamics::TOL_MIN,
            dynamics::TOL_MAX
        )));
    }
    if !(2..=config::GRID_MAX).contains(&args.grid) {
        return Err(CliError::Config(format!(
            "field grid: {} outside [2, {}]",
            args.grid,
            config::GRID_MAX
        )));
    }
    figures::run_figure(&figures::FigureRequest {
        name: args.name,
        out_dir: args.out_dir.clone(),
        tol: args.tol,
        grid: args.grid,
        control_estimate: args.control_estimate,
    })
}

fn run_sweep_command(args: &SweepArgs) -> Result<Vec<PathBuf>, CliError> {
    // The sweep command has its own default output name; a run config file
    // names scenario outputs, so its `out` entry does not apply here.
    let mut run = args.run.clone();
    if run.out.is_none() {
        run.out = Some(PathBuf::from("sweep.csv"));
    }
    let base = config::resolve(args.scenario, &run)?;
    let spec = sweep::AxisSpec {
        axis: args.axis.clone(),
        min: args.min,
        max: args.max,
        count: args.count,
        spacing: args.spacing,
    };
    let data = sweep::run_sweep(&base, &spec)?;

    #[derive(serde::Serialize)]
    struct SweepConfig<'a> {
        #[serde(flatten)]
        base: &'a config::RunConfig,
        sweep: &'a sweep::AxisSpec,
    }
    let cfg = SweepConfig {
        base: &base,
        sweep: &spec,
    };
    table::write_output(&base.out, base.format, &cfg, &data)?;
    Ok(vec![base.out.clone()])
}

fn dispatch(command: &Command) -> Result<Vec<PathBuf>, CliError> {
    match command {
        Command::Single(args) => run_scenario_command(ScenarioKind::Single, args),
        Command::SingleControlled(args) => {
            run_scenario_command(ScenarioKind::SingleControlled, args)
        }
        Command::Periodic(args) => run_scenario_command(ScenarioKind::Periodic, args),
        Command::PeriodicControlled(args) => {
            run_scenario_command(ScenarioKind::PeriodicControlled, args)
        }
        Command::Specfun(args) => run_specfun_command(args),
        Command::Figure(args) => run_figure_command(args),
        Command::Sweep(args) => run_sweep_command(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(paths) => {
            for path in paths {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
