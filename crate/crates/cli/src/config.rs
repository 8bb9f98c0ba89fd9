//! Run configuration: defaults, config-file merge, and validation.
//!
//! Precedence is flags > file > defaults. The file is flat `key = value`
//! text; keys are spelled exactly like the long flags without the dashes.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use crate::CliError;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_GRID: usize = 400;
pub const GRID_MAX: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioKind {
    Single,
    SingleControlled,
    Periodic,
    PeriodicControlled,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Single => "single",
            ScenarioKind::SingleControlled => "single-controlled",
            ScenarioKind::Periodic => "periodic",
            ScenarioKind::PeriodicControlled => "periodic-controlled",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetArg {
    /// Estimate the gap Δ.
    Delta,
    /// Estimate the sweep rate v.
    V,
    /// Estimate the drive frequency ω.
    Omega,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatArg {
    Csv,
    Json,
}

/// Shared flags for the scenario subcommands; every field is optional so
/// the config file and the defaults can fill the gaps.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct RunArgs {
    /// Sweep rate v
    #[arg(long)]
    pub v: Option<f64>,
    /// Level splitting Δ at the crossing
    #[arg(long)]
    pub delta: Option<f64>,
    /// Preparation lead time (the sweep starts at −t0)
    #[arg(long)]
    pub t0: Option<f64>,
    /// Measurement time
    #[arg(long)]
    pub t: Option<f64>,
    /// Static bias of the driven qubit
    #[arg(long)]
    pub eps0: Option<f64>,
    /// Drive amplitude
    #[arg(long)]
    pub amp: Option<f64>,
    /// Drive frequency
    #[arg(long)]
    pub omega: Option<f64>,
    /// Whole half-periods of the control clock
    #[arg(long)]
    pub cycles: Option<u32>,
    /// Fractional trailing half-period, in [0, 1)
    #[arg(long)]
    pub frac: Option<f64>,
    /// Estimation target (defaults to delta for sweeps, omega for drives)
    #[arg(long, value_enum)]
    pub target: Option<TargetArg>,
    /// Sweep-rate estimate used by the control
    #[arg(long)]
    pub v_est: Option<f64>,
    /// Control clock frequency (drive-frequency estimate)
    #[arg(long)]
    pub omega_est: Option<f64>,
    /// Relative phase of the prepared superposition
    #[arg(long)]
    pub beta: Option<f64>,
    /// Winding integer of the control pulses
    #[arg(long)]
    pub l: Option<i32>,
    /// Integrator accuracy target
    #[arg(long)]
    pub tol: Option<f64>,
    /// Number of output samples
    #[arg(long)]
    pub grid: Option<usize>,
    /// Flat key = value config file; flags override its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output data path (sidecar JSON goes next to it)
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Output data format
    #[arg(long, value_enum)]
    pub format: Option<FormatArg>,
}

/// Fully resolved configuration; serialized verbatim into the sidecar.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RunConfig {
    pub scenario: ScenarioKind,
    pub v: f64,
    pub delta: f64,
    pub t0: f64,
    pub t: f64,
    pub eps0: f64,
    pub amp: f64,
    pub omega: f64,
    pub cycles: u32,
    pub frac: f64,
    pub target: TargetArg,
    pub v_est: f64,
    pub omega_est: f64,
    pub beta: f64,
    pub l: i32,
    pub tol: f64,
    pub grid: usize,
    pub format: FormatArg,
    pub out: PathBuf,
}

type FileMap = HashMap<String, (usize, String)>;

fn parse_config_file(path: &Path) -> Result<FileMap, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("config file {}: {e}", path.display())))?;
    let mut map = FileMap::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| {
            CliError::Config(format!("config line {line_no}: expected key = value"))
        })?;
        let key = key.trim().to_string();
        if map.contains_key(&key) {
            return Err(CliError::Config(format!(
                "config line {line_no}: duplicate key '{key}'"
            )));
        }
        map.insert(key, (line_no, value.trim().to_string()));
    }
    Ok(map)
}

fn take_parsed<T: std::str::FromStr>(
    map: &mut FileMap,
    key: &str,
    kind: &str,
) -> Result<Option<T>, CliError> {
    match map.remove(key) {
        None => Ok(None),
        Some((line, raw)) => raw.parse::<T>().map(Some).map_err(|_| {
            CliError::Config(format!("config line {line}: {key} = '{raw}' is not {kind}"))
        }),
    }
}

fn take_target(map: &mut FileMap) -> Result<Option<TargetArg>, CliError> {
    match map.remove("target") {
        None => Ok(None),
        Some((_, raw)) if raw == "delta" => Ok(Some(TargetArg::Delta)),
        Some((_, raw)) if raw == "v" => Ok(Some(TargetArg::V)),
        Some((_, raw)) if raw == "omega" => Ok(Some(TargetArg::Omega)),
        Some((line, raw)) => Err(CliError::Config(format!(
            "config line {line}: target = '{raw}' is not one of delta, v, omega"
        ))),
    }
}

fn take_format(map: &mut FileMap) -> Result<Option<FormatArg>, CliError> {
    match map.remove("format") {
        None => Ok(None),
        Some((_, raw)) if raw == "csv" => Ok(Some(FormatArg::Csv)),
        Some((_, raw)) if raw == "json" => Ok(Some(FormatArg::Json)),
        Some((line, raw)) => Err(CliError::Config(format!(
            "config line {line}: format = '{raw}' is not csv or json"
        ))),
    }
}

fn require_finite(field: &str, value: f64) -> Result<f64, CliError> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(CliError::Config(format!("field {field}: {value} is not finite")))
    }
}

/// Merge flags over the config file over the defaults, then validate the
/// scenario-independent invariants.
pub fn resolve(scenario: ScenarioKind, args: &RunArgs) -> Result<RunConfig, CliError> {
    let mut file = match &args.config {
        Some(path) => parse_config_file(path)?,
        None => FileMap::new(),
    };

    let v = args.v.or(take_parsed(&mut file, "v", "a number")?).unwrap_or(1.0);
    let delta = args
        .delta
        .or(take_parsed(&mut file, "delta", "a number")?)
        .unwrap_or(1.0);
    let t0 = args.t0.or(take_parsed(&mut file, "t0", "a number")?).unwrap_or(100.0);
    let t = args.t.or(take_parsed(&mut file, "t", "a number")?).unwrap_or(100.0);
    let eps0 = args
        .eps0
        .or(take_parsed(&mut file, "eps0", "a number")?)
        .unwrap_or(0.0);
    let amp = args.amp.or(take_parsed(&mut file, "amp", "a number")?).unwrap_or(1.0);
    let omega = args
        .omega
        .or(take_parsed(&mut file, "omega", "a number")?)
        .unwrap_or(1.0);
    let cycles = args
        .cycles
        .or(take_parsed(&mut file, "cycles", "a whole number")?)
        .unwrap_or(60);
    let frac = args.frac.or(take_parsed(&mut file, "frac", "a number")?).unwrap_or(0.0);
    let target = args.target.or(take_target(&mut file)?).unwrap_or(match scenario {
        ScenarioKind::Single | ScenarioKind::SingleControlled => TargetArg::Delta,
        ScenarioKind::Periodic | ScenarioKind::PeriodicControlled => TargetArg::Omega,
    });
    let v_est = args
        .v_est
        .or(take_parsed(&mut file, "v-est", "a number")?)
        .unwrap_or(v);
    let omega_est = args
        .omega_est
        .or(take_parsed(&mut file, "omega-est", "a number")?)
        .unwrap_or(omega);
    let beta = args.beta.or(take_parsed(&mut file, "beta", "a number")?).unwrap_or(0.0);
    let l = args
        .l
        .or(take_parsed(&mut file, "l", "an integer")?)
        .unwrap_or(0);
    let tol = args
        .tol
        .or(take_parsed(&mut file, "tol", "a number")?)
        .unwrap_or(DEFAULT_TOL);
    let grid = args
        .grid
        .or(take_parsed(&mut file, "grid", "a whole number")?)
        .unwrap_or(DEFAULT_GRID);
    let format = args.format.or(take_format(&mut file)?).unwrap_or(FormatArg::Csv);
    let out = match args.out.clone() {
        Some(p) => p,
        None => match take_parsed::<String>(&mut file, "out", "a path")? {
            Some(s) => PathBuf::from(s),
            None => PathBuf::from(format!("{}.csv", scenario.name())),
        },
    };

    if let Some((line, _)) = file.values().min_by_key(|(line, _)| *line) {
        let key = file
            .iter()
            .find(|(_, (l, _))| l == line)
            .map(|(k, _)| k.clone())
            .unwrap_or_default();
        return Err(CliError::Config(format!(
            "config line {line}: unknown key '{key}'"
        )));
    }

    for (field, value) in [
        ("v", v),
        ("delta", delta),
        ("t0", t0),
        ("t", t),
        ("eps0", eps0),
        ("amp", amp),
        ("omega", omega),
        ("frac", frac),
        ("v-est", v_est),
        ("omega-est", omega_est),
        ("beta", beta),
        ("tol", tol),
    ] {
        require_finite(field, value)?;
    }
    if !(dynamics::TOL_MIN..=dynamics::TOL_MAX).contains(&tol) {
        return Err(CliError::Config(format!(
            "field tol: {tol:e} outside the integrator bounds [{:e}, {:e}]",
            dynamics::TOL_MIN,
            dynamics::TOL_MAX
        )));
    }
    if !(2..=GRID_MAX).contains(&grid) {
        return Err(CliError::Config(format!(
            "field grid: {grid} outside [2, {GRID_MAX}]"
        )));
    }
    let span_len = match scenario {
        ScenarioKind::Single | ScenarioKind::SingleControlled => t + t0,
        ScenarioKind::Periodic => t,
        // The drive span is set by the control clock, not by t.
        ScenarioKind::PeriodicControlled => (cycles as f64 + frac) * std::f64::consts::PI / omega_est,
    };
    if !(span_len > 0.0) {
        return Err(CliError::Config(format!(
            "field span: the propagation span has length {span_len} (must be positive)"
        )));
    }

    Ok(RunConfig {
        scenario,
        v,
        delta,
        t0,
        t,
        eps0,
        amp,
        omega,
        cycles,
        frac,
        target,
        v_est,
        omega_est,
        beta,
        l,
        tol,
        grid,
        format,
        out,
    })
}
