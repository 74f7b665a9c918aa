//! Subcommand implementations: evaluate, sweep, heatmap, optimize, limits,
//! and the self-check battery.

use crate::config::RunConfig;
use crate::error::{io_error, CliError, Result};
use crate::output;
use crate::parallel;
use crate::render;
use phonon_thermo_core::bath::DriveMode;
use phonon_thermo_core::metrology::VarianceBound;
use phonon_thermo_core::steady_state::Variant;
use phonon_thermo_core::sweep::{
    evaluate, evaluate_at, optimize_scalar, AxisScale, AxisSpec, FixedConfig, SweepParameter,
    SweepResult,
};
use phonon_thermo_core::validate;
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Width the golden-section search narrows the argmax bracket to.
const OPTIMIZE_TOL: f64 = 1e-6;

/// Points in the scan artifact written beside an optimization, matching the
/// coarse scan the optimizer itself runs.
const SCAN_POINTS: usize = 64;

fn tool_version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

fn variant_name(variant: Variant) -> &'static str {
    match variant {
        Variant::Paper => "paper",
        Variant::Rederived => "rederived",
    }
}

fn drive_mode_name(mode: DriveMode) -> &'static str {
    match mode {
        DriveMode::Bare => "bare",
        DriveMode::Renormalized => "renormalized",
    }
}

/// One pointwise evaluation, printed as a single JSON record with a fixed
/// field order.
#[derive(Serialize)]
struct EvalRecord<'a> {
    temperature: f64,
    eta: f64,
    omega_c: f64,
    omega0: f64,
    #[serde(rename = "Omega")]
    drive: f64,
    drive_mode: &'a str,
    variant: &'a str,
    #[serde(rename = "P_e")]
    p_e: f64,
    #[serde(rename = "dPe_dT")]
    dpe_dt: f64,
    #[serde(rename = "F_Q")]
    f_q: f64,
    f: f64,
    omega_eff: f64,
    gamma: f64,
    /// Cramér–Rao variance bound for one measurement; `null` when the
    /// Fisher information vanishes.
    variance_bound_single_shot: Option<f64>,
}

/// Evaluates the configured operating point and prints one JSON record.
pub fn eval(cfg: &RunConfig) -> Result<()> {
    let base = cfg.base()?;
    let cell = evaluate(&base)?;
    let record = EvalRecord {
        temperature: base.temperature,
        eta: base.bath.eta(),
        omega_c: base.bath.omega_c(),
        omega0: base.probe.omega0(),
        drive: base.probe.drive(),
        drive_mode: drive_mode_name(base.probe.drive_mode()),
        variant: variant_name(base.variant),
        p_e: cell.qfi.p_e,
        dpe_dt: cell.qfi.dpe_dt,
        f_q: cell.qfi.f_q,
        f: cell.f,
        omega_eff: cell.omega_eff,
        gamma: cell.gamma,
        variance_bound_single_shot: match cell.qfi.variance_bound_single_shot {
            VarianceBound::Finite(v) => Some(v),
            VarianceBound::Unbounded => None,
        },
    };
    println!(
        "{}",
        serde_json::to_string(&record).expect("record of plain numbers serializes")
    );
    Ok(())
}

fn ensure_output_dir(cfg: &RunConfig) -> Result<()> {
    std::fs::create_dir_all(&cfg.output_dir).map_err(io_error(cfg.output_dir.clone()))
}

fn write_artifact(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(io_error(path.to_path_buf()))
}

/// Evaluates a 1-D sweep with the configured parallelism; failed cells are
/// recorded as empty, never aborting the run.
fn parallel_sweep(axis: &AxisSpec, base: &FixedConfig) -> Result<SweepResult> {
    let threads = parallel::thread_count()?;
    let values = axis.values();
    let cells = parallel::map_indexed(values.len(), threads, |i| {
        evaluate_at(base, axis.parameter(), values[i]).ok()
    });
    SweepResult::from_cells(vec![*axis], *base, cells).map_err(Into::into)
}

fn sweep_artifacts(
    cfg: &RunConfig,
    result: &SweepResult,
    stem: &str,
    title: &str,
) -> Result<(PathBuf, Option<PathBuf>)> {
    ensure_output_dir(cfg)?;
    let csv_path = cfg.output_dir.join(format!("{stem}.csv"));
    write_artifact(&csv_path, &output::sweep_csv(result))?;
    let svg_path = if cfg.emit_svg {
        let axis = result.axes()[0];
        let ys: Vec<Option<f64>> = (0..axis.count())
            .map(|i| result.at(i).map(|c| c.qfi.f_q))
            .collect();
        let svg = render::line_chart(
            title,
            axis.parameter().name(),
            "F_Q",
            &axis.values(),
            &ys,
            axis.scale() == AxisScale::Log,
        );
        let path = cfg.output_dir.join(format!("{stem}.svg"));
        write_artifact(&path, &svg)?;
        Some(path)
    } else {
        None
    };
    Ok((csv_path, svg_path))
}

fn describe_max(result: &SweepResult) -> String {
    let axis = result.axes()[0];
    match result.argmax_f_q() {
        Some((i, cell)) => format!(
            "max F_Q = {} at {} = {}",
            output::fmt_f64(cell.qfi.f_q),
            axis.parameter().name(),
            output::fmt_f64(axis.value_at(i))
        ),
        None => "no finite cells".to_string(),
    }
}

/// Sweeps one parameter axis and writes the CSV curve (and optional SVG).
pub fn sweep(cfg: &RunConfig, parameter: SweepParameter) -> Result<()> {
    let base = cfg.base()?;
    let axis = cfg.grids.axis(parameter);
    let result = parallel_sweep(&axis, &base)?;
    let empty = result.cells().iter().filter(|c| c.is_none()).count();
    let title = format!(
        "F_Q vs {} (T = {}, eta = {}, omega_c = {}, {})",
        parameter.name(),
        output::fmt_f64(base.temperature),
        output::fmt_f64(base.bath.eta()),
        output::fmt_f64(base.bath.omega_c()),
        variant_name(base.variant)
    );
    let (csv_path, _) =
        sweep_artifacts(cfg, &result, &format!("sweep_{}", parameter.name()), &title)?;
    let empty_note = if empty > 0 {
        format!(", {empty} empty cells")
    } else {
        String::new()
    };
    println!(
        "sweep {}: {} points{empty_note} -> {} ({}; tool {})",
        parameter.name(),
        axis.count(),
        csv_path.display(),
        describe_max(&result),
        tool_version()
    );
    Ok(())
}

/// Scans the temperature × coupling plane and writes the CSV map (and
/// optional SVG).
pub fn heatmap(cfg: &RunConfig) -> Result<()> {
    let base = cfg.base()?;
    let t_axis = cfg.grids.temperature;
    let e_axis = cfg.grids.coupling;
    let threads = parallel::thread_count()?;
    let (nt, ne) = (t_axis.count(), e_axis.count());
    let t_values = t_axis.values();
    let e_values = e_axis.values();
    // Same evaluation chain as a nested serial loop: fix the row
    // temperature first, then the column coupling, so cell values are
    // bit-identical for every thread count.
    let cells = parallel::map_indexed(nt * ne, threads, |idx| {
        let (i, j) = (idx / ne, idx % ne);
        base.with_parameter(SweepParameter::Temperature, t_values[i])
            .and_then(|row| evaluate_at(&row, SweepParameter::Coupling, e_values[j]))
            .ok()
    });
    let result = SweepResult::from_cells(vec![t_axis, e_axis], base, cells)?;

    ensure_output_dir(cfg)?;
    let csv_path = cfg.output_dir.join("heatmap.csv");
    write_artifact(&csv_path, &output::heatmap_csv(&result))?;
    if cfg.emit_svg {
        let values: Vec<Option<f64>> = result
            .cells()
            .iter()
            .map(|c| c.as_ref().map(|c| c.qfi.f_q))
            .collect();
        let svg = render::heatmap(
            &format!(
                "F_Q over temperature x coupling (omega_c = {}, {})",
                output::fmt_f64(base.bath.omega_c()),
                variant_name(base.variant)
            ),
            "eta",
            "T",
            &e_values,
            &t_values,
            &values,
        );
        write_artifact(&cfg.output_dir.join("heatmap.svg"), &svg)?;
    }

    let location = match result.argmax_f_q() {
        Some((idx, cell)) => format!(
            "max F_Q = {} at T = {}, eta = {}",
            output::fmt_f64(cell.qfi.f_q),
            output::fmt_f64(t_values[idx / ne]),
            output::fmt_f64(e_values[idx % ne])
        ),
        None => "no finite cells".to_string(),
    };
    println!(
        "heatmap: {nt}x{ne} cells -> {} ({location}; tool {})",
        csv_path.display(),
        tool_version()
    );
    Ok(())
}

/// Maximizes the Fisher information over the given parameter's grid range
/// and writes the coarse-scan curve beside the reported optimum.
pub fn optimize(cfg: &RunConfig, parameter: SweepParameter) -> Result<()> {
    if !matches!(parameter, SweepParameter::Coupling | SweepParameter::Cutoff) {
        return Err(CliError::Config(
            "optimize supports --axis coupling or --axis cutoff".into(),
        ));
    }
    let base = cfg.base()?;
    let grid = cfg.grids.axis(parameter);
    let report = optimize_scalar(parameter, (grid.start(), grid.stop()), &base, OPTIMIZE_TOL)
        .map_err(|e| CliError::Optimize(e.to_string()))?;

    let scan_axis = AxisSpec::new(
        parameter,
        grid.start(),
        grid.stop(),
        SCAN_POINTS,
        grid.scale(),
    )
    .map_err(CliError::Domain)?;
    let scan = parallel_sweep(&scan_axis, &base)?;
    let title = format!(
        "F_Q vs {} (T = {}, argmax = {})",
        parameter.name(),
        output::fmt_f64(base.temperature),
        output::fmt_f64(report.argmax)
    );
    let (csv_path, _) =
        sweep_artifacts(cfg, &scan, &format!("optimize_{}", parameter.name()), &title)?;
    println!(
        "optimize {}: argmax = {}, F_Q = {}, {} iterations, {} -> {} (tool {})",
        parameter.name(),
        output::fmt_f64(report.argmax),
        output::fmt_f64(report.f_q_max),
        report.iterations,
        if report.interior {
            "interior"
        } else {
            "on the bracket edge"
        },
        csv_path.display(),
        tool_version()
    );
    Ok(())
}

/// Evaluates the three asymptotic regimes and writes the text report.
pub fn limits(cfg: &RunConfig) -> Result<()> {
    let base = cfg.base()?;
    let report = phonon_thermo_core::sweep::limit_report(&base)?;
    ensure_output_dir(cfg)?;
    let path = cfg.output_dir.join("limits.txt");
    write_artifact(&path, &output::limits_text(&report))?;
    println!(
        "limits: weak {}, strong {}, low-temperature {} -> {} (tool {})",
        if report.weak.passed { "pass" } else { "FAIL" },
        if report.strong.passed { "pass" } else { "FAIL" },
        if report.low_temperature.passed {
            "pass"
        } else {
            "FAIL"
        },
        path.display(),
        tool_version()
    );
    Ok(())
}

/// Runs the four-suite self-check battery; a tolerance breach is a
/// [`CliError::Validation`] (exit code 5).
pub fn validate_cmd(cfg: &RunConfig) -> Result<()> {
    let report = validate::run(cfg.probe, cfg.variant)?;
    print!("{}", output::validation_text(&report));
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Validation(output::failing_suites(&report)))
    }
}
