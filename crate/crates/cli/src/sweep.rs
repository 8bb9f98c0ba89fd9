//! One-axis parameter sweeps: each axis value runs its scenario to the
//! endpoint and contributes one row. Points evaluate in parallel; assembly
//! is ordered by axis value, so the output is deterministic.

use rayon::prelude::*;

use crate::config::RunConfig;
use crate::scenario::{endpoint, run_scenario};
use crate::table::{Diagnostics, Table};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct AxisSpec {
    pub axis: String,
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

/// Named axes a sweep may vary. gamma is a convenience axis: it holds v
/// fixed and sets delta = 2·sqrt(v·gamma).
fn apply_axis(cfg: &mut RunConfig, axis: &str, x: f64) -> Result<(), CliError> {
    match axis {
        "v" => cfg.v = x,
        "delta" => cfg.delta = x,
        "t0" => cfg.t0 = x,
        "t" => cfg.t = x,
        "eps0" => cfg.eps0 = x,
        "amp" => cfg.amp = x,
        "omega" => cfg.omega = x,
        "beta" => cfg.beta = x,
        "frac" => cfg.frac = x,
        "gamma" => {
            if x < 0.0 {
                return Err(CliError::Config(format!("field gamma: {x} is negative")));
            }
            cfg.delta = 2.0 * (cfg.v * x).sqrt();
        }
        other => {
            return Err(CliError::Config(format!(
                "field axis: unknown sweep axis '{other}'"
            )))
        }
    }
    Ok(())
}

pub fn axis_values(spec: &AxisSpec) -> Result<Vec<f64>, CliError> {
    if !spec.min.is_finite() || !spec.max.is_finite() {
        return Err(CliError::Config("field axis: min and max must be finite".into()));
    }
    if !(1..=crate::config::GRID_MAX).contains(&spec.count) {
        return Err(CliError::Config(format!(
            "field count: {} outside [1, {}]",
            spec.count,
            crate::config::GRID_MAX
        )));
    }
    if spec.count == 1 {
        return Ok(vec![spec.min]);
    }
    if !(spec.min < spec.max) {
        return Err(CliError::Config(format!(
            "field axis: min {} must be below max {}",
            spec.min, spec.max
        )));
    }
    Ok(match spec.spacing {
        Spacing::Linear => crate::scenario::linspace(spec.min, spec.max, spec.count),
        Spacing::Log => {
            if spec.min <= 0.0 {
                return Err(CliError::Config(format!(
                    "field axis: log spacing needs min > 0, got {}",
                    spec.min
                )));
            }
            let mut v: Vec<f64> =
                crate::scenario::linspace(spec.min.ln(), spec.max.ln(), spec.count)
                    .into_iter()
                    .map(f64::exp)
                    .collect();
            v[0] = spec.min;
            let last = spec.count - 1;
            v[last] = spec.max;
            v
        }
    })
}

/// Run the configured scenario at every axis value and keep the endpoint
/// row, relabelling its abscissa with the axis value.
pub fn run_sweep(base: &RunConfig, spec: &AxisSpec) -> Result<Table, CliError> {
    let values = axis_values(spec)?;

    // Column layout comes from a probe at the first axis value.
    let evaluate = |x: f64| -> Result<(Vec<String>, Vec<Option<f64>>, Diagnostics), CliError> {
        let mut cfg = base.clone();
        apply_axis(&mut cfg, &spec.axis, x)?;
        let t_end = endpoint(&cfg)?;
        let table = run_scenario(&cfg, &[t_end])?;
        let mut row = table.rows.into_iter().next().expect("one endpoint row");
        row[0] = Some(x);
        Ok((table.columns, row, table.diagnostics))
    };

    let points: Vec<_> = values
        .par_iter()
        .map(|&x| evaluate(x))
        .collect::<Result<_, _>>()?;

    let mut columns = points[0].0.clone();
    columns[0] = spec.axis.clone();
    let mut diagnostics = Diagnostics::default();
    let mut rows = Vec::with_capacity(points.len());
    for (cols, row, diag) in points {
        debug_assert_eq!(cols.len(), columns.len());
        diagnostics.absorb(&diag);
        rows.push(row);
    }
    diagnostics.rows = rows.len();
    Ok(Table {
        columns,
        rows,
        diagnostics,
    })
}
