//! Figure presets: canonical parameter sets emitted as data files next to a
//! gnuplot script that renders them. Paths inside a script are relative, so
//! a figure directory can be moved as a unit.

use std::path::PathBuf;

use analytic::LZParams;
use dynamics::Target;

use crate::config::{FormatArg, RunConfig, ScenarioKind, TargetArg};
use crate::table::{fmt17, write_output, write_text};
use crate::{scenario, CliError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FigureName {
    /// Gap estimation under the sweep, free and controlled
    Fig1,
    /// Sweep-rate estimation under the sweep, free and controlled
    Fig2,
    /// Drive-frequency estimation at the three control levels
    Fig3,
}

pub struct FigureRequest {
    pub name: FigureName,
    pub out_dir: PathBuf,
    pub tol: f64,
    pub grid: usize,
    pub control_estimate: Option<f64>,
}

/// Emit one figure: every data file with its sidecar, then the script.
/// Returns the paths of the data files and the script, in emission order.
pub fn run_figure(req: &FigureRequest) -> Result<Vec<PathBuf>, CliError> {
    match req.name {
        FigureName::Fig1 => sweep_figure(req, "fig1", TargetArg::Delta),
        FigureName::Fig2 => sweep_figure(req, "fig2", TargetArg::V),
        FigureName::Fig3 => {
            if req.control_estimate.is_some() {
                return Err(CliError::Config(
                    "field control-estimate: only the sweep figures take it".into(),
                ));
            }
            drive_figure(req)
        }
    }
}

/// The sweep figures share one parameter point: v = delta = 1, a symmetric
/// window t0 = t = 100.
fn sweep_config(
    scenario: ScenarioKind,
    target: TargetArg,
    v_est: f64,
    req: &FigureRequest,
    out: PathBuf,
) -> RunConfig {
    RunConfig {
        scenario,
        v: 1.0,
        delta: 1.0,
        t0: 100.0,
        t: 100.0,
        eps0: 0.0,
        amp: 1.0,
        omega: 1.0,
        cycles: 60,
        frac: 0.0,
        target,
        v_est,
        omega_est: 1.0,
        beta: 0.0,
        l: 0,
        tol: req.tol,
        grid: req.grid,
        format: FormatArg::Csv,
        out,
    }
}

/// The drive figure runs 60 control half-periods at resonance with a weak
/// splitting, so the rotating-frame overlay stays tight.
fn drive_config(scenario: ScenarioKind, req: &FigureRequest, out: PathBuf) -> RunConfig {
    RunConfig {
        scenario,
        v: 1.0,
        delta: 0.1,
        t0: 100.0,
        t: 60.0 * std::f64::consts::PI,
        eps0: 0.0,
        amp: 1.0,
        omega: 1.0,
        cycles: 60,
        frac: 0.0,
        target: TargetArg::Omega,
        v_est: 1.0,
        omega_est: 1.0,
        beta: 0.0,
        l: 0,
        tol: req.tol,
        grid: req.grid,
        format: FormatArg::Csv,
        out,
    }
}

fn emit(cfg: &RunConfig) -> Result<(), CliError> {
    let grid = scenario::sample_grid(cfg)?;
    let table = scenario::run_scenario(cfg, &grid)?;
    write_output(&cfg.out, cfg.format, cfg, &table)
}

fn sweep_figure(
    req: &FigureRequest,
    stem: &str,
    target: TargetArg,
) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();

    let free = sweep_config(
        ScenarioKind::Single,
        target,
        1.0,
        req,
        req.out_dir.join(format!("{stem}_sweep.csv")),
    );
    emit(&free)?;
    written.push(free.out.clone());

    let controlled = sweep_config(
        ScenarioKind::SingleControlled,
        target,
        1.0,
        req,
        req.out_dir.join(format!("{stem}_controlled.csv")),
    );
    emit(&controlled)?;
    written.push(controlled.out.clone());

    // The detuned curve reuses the plan with a wrong rate estimate; the
    // preset rate is 1, so the ratio is the estimate itself.
    if let Some(ratio) = req.control_estimate {
        let mismatch = sweep_config(
            ScenarioKind::SingleControlled,
            target,
            ratio,
            req,
            req.out_dir.join(format!("{stem}_controlled_mismatch.csv")),
        );
        emit(&mismatch)?;
        written.push(mismatch.out.clone());
    }

    let params = LZParams::new(1.0, 1.0, 100.0, 100.0).expect("preset parameters are valid");
    let marker_target = match target {
        TargetArg::Delta => Target::Gap,
        TargetArg::V => Target::SweepRate,
        TargetArg::Omega => unreachable!("sweep figures estimate delta or v"),
    };
    let marker = analytic::cfi_closed_form(marker_target, &params).expect("sweep target");
    let script = req.out_dir.join(format!("{stem}.gp"));
    write_text(
        &script,
        &sweep_script(stem, req.control_estimate.is_some(), 100.0, marker),
    )?;
    written.push(script);
    Ok(written)
}

fn sweep_script(stem: &str, mismatch: bool, t_end: f64, marker: f64) -> String {
    let mut plot = vec![
        format!("  \"{stem}_sweep.csv\" skip 1 using 1:2 with lines title \"QFI, free sweep\""),
        format!(
            "  \"{stem}_sweep.csv\" skip 1 using 1:3 with lines title \"CFI, local eigenbasis\""
        ),
        format!("  \"{stem}_controlled.csv\" skip 1 using 1:2 with lines title \"QFI, controlled\""),
        format!(
            "  \"{stem}_controlled.csv\" skip 1 using 1:6 with lines dashtype 2 title \"control bound\""
        ),
    ];
    if mismatch {
        plot.push(format!(
            "  \"{stem}_controlled_mismatch.csv\" skip 1 using 1:2 with lines dashtype 3 title \"QFI, detuned control\""
        ));
    }
    plot.push(r#"  "-" with points pointtype 7 title "long-time CFI""#.to_string());
    format!(
        "# {stem}: Fisher information under the linear sweep.\n\
         set datafile separator \",\"\n\
         set xlabel \"t\"\n\
         set ylabel \"Fisher information\"\n\
         set key left top\n\
         set logscale y\n\
         plot \\\n{}\n{},{}\ne\n",
        plot.join(", \\\n"),
        fmt17(t_end),
        fmt17(marker),
    )
}

fn drive_figure(req: &FigureRequest) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();

    let free = drive_config(
        ScenarioKind::Periodic,
        req,
        req.out_dir.join("fig3_nocontrol.csv"),
    );
    emit(&free)?;
    written.push(free.out.clone());

    // Middle curve: the cancellation Hamiltonian without its pulses. The
    // sidecar carries a marker because the scenario name alone would
    // describe the pulsed run.
    let och = drive_config(
        ScenarioKind::PeriodicControlled,
        req,
        req.out_dir.join("fig3_och.csv"),
    );
    let grid = scenario::sample_grid(&och)?;
    let table = scenario::run_periodic_och_only(&och, &grid)?;
    #[derive(serde::Serialize)]
    struct OchConfig<'a> {
        #[serde(flatten)]
        base: &'a RunConfig,
        pulses_removed: bool,
    }
    write_output(
        &och.out,
        och.format,
        &OchConfig {
            base: &och,
            pulses_removed: true,
        },
        &table,
    )?;
    written.push(och.out.clone());

    let olch = drive_config(
        ScenarioKind::PeriodicControlled,
        req,
        req.out_dir.join("fig3_olch.csv"),
    );
    emit(&olch)?;
    written.push(olch.out.clone());

    let script = req.out_dir.join("fig3.gp");
    write_text(&script, drive_script())?;
    written.push(script);
    Ok(written)
}

fn drive_script() -> &'static str {
    "# fig3: drive-frequency information at the three control levels.\n\
     set datafile separator \",\"\n\
     set xlabel \"t\"\n\
     set ylabel \"QFI\"\n\
     set key left top\n\
     set logscale y\n\
     plot \\\n\
     \x20 \"fig3_nocontrol.csv\" skip 1 using 1:2 with lines title \"no control\", \\\n\
     \x20 \"fig3_och.csv\" skip 1 using 1:2 with lines title \"cancellation only\", \\\n\
     \x20 \"fig3_olch.csv\" skip 1 using 1:2 with lines title \"cancellation and pulses\", \\\n\
     \x20 \"fig3_olch.csv\" skip 1 using 1:7 with points pointtype 6 title \"half-period closed form\"\n"
}
