//! Deterministic text artifacts: number formatting, CSV tables, and the
//! plain-text reports.
//!
//! Every byte written here is a pure function of the computed values, so
//! identical configurations produce identical files regardless of thread
//! count, locale, or wall-clock time.

use phonon_thermo_core::sweep::{LimitReport, SweepResult};
use phonon_thermo_core::validate::ValidationReport;
use std::fmt::Write as _;

/// Fixed header of every 1-D sweep table.
pub const SWEEP_CSV_HEADER: &str = "axis_name,axis_value,P_e,dPe_dT,F_Q,f,omega_eff,gamma";

/// Fixed header of the 2-D map table.
pub const HEATMAP_CSV_HEADER: &str = "T,eta,F_Q";

/// Shortest locale-independent decimal that parses back to the same `f64`.
///
/// Positional digits in a moderate range, scientific notation outside it;
/// both forms print the shortest digit string that round-trips, always with
/// a period as the decimal separator.
pub fn fmt_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-4..1e6).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Renders a 1-D sweep as CSV. Cells that failed a domain constraint keep
/// their row with the value columns left empty.
pub fn sweep_csv(result: &SweepResult) -> String {
    let axis = result.axes()[0];
    let name = axis.parameter().name();
    let mut s = String::with_capacity(64 * (axis.count() + 1));
    s.push_str(SWEEP_CSV_HEADER);
    s.push('\n');
    for i in 0..axis.count() {
        let x = fmt_f64(axis.value_at(i));
        match result.at(i) {
            Some(c) => {
                let _ = writeln!(
                    s,
                    "{name},{x},{},{},{},{},{},{}",
                    fmt_f64(c.qfi.p_e),
                    fmt_f64(c.qfi.dpe_dt),
                    fmt_f64(c.qfi.f_q),
                    fmt_f64(c.f),
                    fmt_f64(c.omega_eff),
                    fmt_f64(c.gamma),
                );
            }
            None => {
                let _ = writeln!(s, "{name},{x},,,,,,");
            }
        }
    }
    s
}

/// Renders a temperature × coupling map as CSV, row-major with ascending
/// temperature in the outer loop. Failed cells leave the value column empty.
pub fn heatmap_csv(result: &SweepResult) -> String {
    let t_axis = result.axes()[0];
    let e_axis = result.axes()[1];
    let mut s = String::with_capacity(32 * (t_axis.count() * e_axis.count() + 1));
    s.push_str(HEATMAP_CSV_HEADER);
    s.push('\n');
    for i in 0..t_axis.count() {
        let t = fmt_f64(t_axis.value_at(i));
        for j in 0..e_axis.count() {
            let e = fmt_f64(e_axis.value_at(j));
            match result.at2(i, j) {
                Some(c) => {
                    let _ = writeln!(s, "{t},{e},{}", fmt_f64(c.qfi.f_q));
                }
                None => {
                    let _ = writeln!(s, "{t},{e},");
                }
            }
        }
    }
    s
}

fn pass_str(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "FAIL"
    }
}

/// Renders the three-block asymptotic report as plain text.
pub fn limits_text(report: &LimitReport) -> String {
    let mut s = String::new();
    let w = &report.weak;
    let _ = writeln!(s, "weak coupling (eta -> 0), evaluated at eta = {}", fmt_f64(w.eta));
    let _ = writeln!(s, "  f - 1                     = {}", fmt_f64(w.f_minus_one));
    let _ = writeln!(s, "  gamma / eta               = {}", fmt_f64(w.gamma_over_eta));
    let _ = writeln!(
        s,
        "  undressed linear slope    = {}",
        fmt_f64(w.predicted_gamma_over_eta)
    );
    let _ = writeln!(s, "  status: {}  (requires |f - 1| < 1e-5)", pass_str(w.passed));
    s.push('\n');
    let st = &report.strong;
    let _ = writeln!(
        s,
        "strong coupling (eta -> infinity), evaluated at eta = {}",
        fmt_f64(st.eta)
    );
    let _ = writeln!(s, "  f                         = {}", fmt_f64(st.f));
    let _ = writeln!(s, "  P_e                       = {}", fmt_f64(st.p_e));
    let _ = writeln!(
        s,
        "  |P_e - 1/2|               = {}",
        fmt_f64(st.deviation_from_half)
    );
    let _ = writeln!(s, "  F_Q                       = {}", fmt_f64(st.f_q));
    let _ = writeln!(
        s,
        "  status: {}  (requires |P_e - 1/2| < 1e-3 and F_Q < 1e-6)",
        pass_str(st.passed)
    );
    s.push('\n');
    let lt = &report.low_temperature;
    let _ = writeln!(
        s,
        "low temperature (T -> 0), evaluated at T = {}",
        fmt_f64(lt.temperature)
    );
    let _ = writeln!(s, "  dn/dT                     = {}", fmt_f64(lt.dn_dt));
    let _ = writeln!(
        s,
        "  (omega0/T^2) e^(-omega0/T) = {}",
        fmt_f64(lt.asymptote)
    );
    let _ = writeln!(s, "  ratio                     = {}", fmt_f64(lt.ratio));
    let _ = writeln!(
        s,
        "  status: {}  (requires ratio within 1% of 1)",
        pass_str(lt.passed)
    );
    s.push('\n');
    let _ = writeln!(s, "overall: {}", pass_str(report.passed()));
    s
}

/// Renders the self-check battery as one line per suite plus an overall
/// verdict; also used verbatim as the command's standard output.
pub fn validation_text(report: &ValidationReport) -> String {
    let mut s = String::new();
    let d = &report.derivative;
    let _ = writeln!(
        s,
        "derivative suite:    grid {}x{}, max scaled error = {} (tolerance {}) -> {}",
        d.grid.0,
        d.grid.1,
        fmt_f64(d.max_scaled_error),
        fmt_f64(d.tolerance),
        pass_str(d.passed)
    );
    let o = &report.ode;
    let _ = writeln!(
        s,
        "steady-state suite:  grid {}x{}, max |dP_e| paper = {}, rederived = {} (tolerance {}, either variant) -> {}",
        o.grid.0,
        o.grid.1,
        fmt_f64(o.max_abs_dev_paper),
        fmt_f64(o.max_abs_dev_rederived),
        fmt_f64(o.tolerance),
        pass_str(o.passed)
    );
    let i = &report.identity;
    let _ = writeln!(
        s,
        "identity suite:      {} samples, max relative error = {} (tolerance {}) -> {}",
        i.samples,
        fmt_f64(i.max_rel_error),
        fmt_f64(i.tolerance),
        pass_str(i.passed)
    );
    let m = &report.monotonicity;
    let _ = writeln!(
        s,
        "monotonicity suite:  {} comparisons, {} violations -> {}",
        m.comparisons,
        m.violations,
        pass_str(m.passed)
    );
    let _ = writeln!(s, "overall: {}", pass_str(report.passed()));
    s
}

/// Names of the suites that failed, comma-separated.
pub fn failing_suites(report: &ValidationReport) -> String {
    let mut names = Vec::new();
    if !report.derivative.passed {
        names.push("derivative");
    }
    if !report.ode.passed {
        names.push("steady-state");
    }
    if !report.identity.passed {
        names.push("identity");
    }
    if !report.monotonicity.passed {
        names.push("monotonicity");
    }
    names.join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips_and_stays_compact() {
        for v in [
            0.0,
            1.0,
            -1.0,
            0.1,
            0.325,
            1.0 / 3.0,
            1e-30,
            -2.5e-7,
            6.02e23,
            f64::MIN_POSITIVE,
            f64::MAX,
            12345.6789,
        ] {
            let s = fmt_f64(v);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v} -> {s}");
            assert!(!s.contains(','));
        }
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(0.5), "0.5");
        assert_eq!(fmt_f64(1e-30), "1e-30");
    }

    #[test]
    fn sweep_rows_follow_the_fixed_schema() {
        use phonon_thermo_core::bath::{BathConfig, DriveMode, ProbeConfig};
        use phonon_thermo_core::steady_state::Variant;
        use phonon_thermo_core::sweep::{sweep_1d, AxisScale, AxisSpec, FixedConfig, SweepParameter};
        let base = FixedConfig::new(
            ProbeConfig::new(1.0, 0.5, DriveMode::Bare).unwrap(),
            BathConfig::new(0.6, 0.8, 1.0).unwrap(),
            1.0,
            Variant::Paper,
        )
        .unwrap();
        let axis =
            AxisSpec::new(SweepParameter::Coupling, 0.1, 1.0, 4, AxisScale::Linear).unwrap();
        let csv = sweep_csv(&sweep_1d(&axis, &base));
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SWEEP_CSV_HEADER);
        let first = lines.next().unwrap();
        assert!(first.starts_with("coupling,0.1,"), "{first}");
        assert_eq!(first.split(',').count(), 8);
        assert_eq!(csv.lines().count(), 5);
    }
}
