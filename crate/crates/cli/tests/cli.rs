//! End-to-end tests of the command-line binary: configuration handling,
//! exit codes, artifact formats, and determinism.

use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_phonon-thermo"));
    // Hermetic thread selection unless a test opts in explicitly.
    cmd.env_remove("PHONON_THERMO_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary launches")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("config.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

/// Minimal well-formedness scan: every tag closes, attributes stay inside
/// tags, and the element stack balances.
fn assert_balanced_xml(text: &str) {
    let mut stack: Vec<String> = Vec::new();
    let mut rest = text;
    while let Some(start) = rest.find('<') {
        let end = rest[start..].find('>').expect("every tag closes") + start;
        let tag = &rest[start + 1..end];
        if let Some(name) = tag.strip_prefix('/') {
            let open = stack.pop().expect("close matches an open tag");
            assert_eq!(open, name, "mismatched close");
        } else if !tag.ends_with('/') && !tag.starts_with('?') && !tag.starts_with('!') {
            let name: String = tag
                .chars()
                .take_while(|c| !c.is_whitespace() && *c != '>')
                .collect();
            stack.push(name);
        }
        rest = &rest[end + 1..];
    }
    assert!(stack.is_empty(), "unclosed tags: {stack:?}");
}

#[test]
fn eval_prints_one_json_record_with_fixed_field_order() {
    let out = run(&["eval"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let line = text.trim();
    assert_eq!(text.trim_end().lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(line).unwrap();
    let p_e = v["P_e"].as_f64().unwrap();
    assert!(p_e > 0.0 && p_e <= 0.5);
    assert!(v["F_Q"].as_f64().unwrap() > 0.0);
    assert_eq!(v["variant"], "paper");
    assert_eq!(v["temperature"].as_f64().unwrap(), 1.0);
    assert_eq!(v["omega_c"].as_f64().unwrap(), 0.8);
    // Field order is part of the contract: serialization follows the
    // declaration order, so the raw text must list keys in sequence.
    let keys = [
        "\"temperature\"",
        "\"eta\"",
        "\"omega_c\"",
        "\"omega0\"",
        "\"Omega\"",
        "\"drive_mode\"",
        "\"variant\"",
        "\"P_e\"",
        "\"dPe_dT\"",
        "\"F_Q\"",
        "\"f\"",
        "\"omega_eff\"",
        "\"gamma\"",
        "\"variance_bound_single_shot\"",
    ];
    let mut last = 0;
    for key in keys {
        let pos = line.find(key).unwrap_or_else(|| panic!("missing {key}"));
        assert!(pos >= last, "{key} out of order");
        last = pos;
    }
}

#[test]
fn eval_at_negligible_coupling_reports_negligible_information() {
    let out = run(&["eval", "--eta", "1e-9"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert!(v["F_Q"].as_f64().unwrap() < 1e-12);
}

#[test]
fn variants_agree_where_the_splitting_is_frozen_out() {
    // Deep dressing: omega_eff is negligible, so the two denominators
    // coincide and both variants sit at the saturation plateau.
    let mut populations = Vec::new();
    for variant in ["paper", "rederived"] {
        let out = run(&["eval", "--eta", "30", "--variant", variant]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
        populations.push(v["P_e"].as_f64().unwrap());
    }
    assert!((populations[0] - populations[1]).abs() < 1e-3);
}

#[test]
fn unknown_config_keys_exit_2_naming_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"bogus": 1}"#);
    let out = run(&["eval", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bogus"), "{}", stderr(&out));
}

#[test]
fn invariant_violations_exit_2_naming_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), r#"{"bath": {"eta": -1}}"#);
    let out = run(&["eval", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("eta"), "{}", stderr(&out));
}

#[test]
fn missing_config_file_exits_2() {
    let out = run(&["eval", "--config", "/nonexistent/config.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unwritable_output_location_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("occupied");
    std::fs::write(&file, "x").unwrap();
    let nested = file.join("sub");
    let out = run(&["limits", "--out", nested.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
}

#[test]
fn invalid_thread_environment_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    for bad in ["zero", "0", "-1", "1.5"] {
        let out = bin()
            .args(["sweep", "--out", dir.path().to_str().unwrap()])
            .env("PHONON_THERMO_THREADS", bad)
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(2), "value {bad:?}");
        assert!(stderr(&out).contains("PHONON_THERMO_THREADS"));
    }
}

#[test]
fn sweep_rows_reproduce_exactly_under_reevaluation() {
    use phonon_thermo_core::bath::{BathConfig, DriveMode, ProbeConfig};
    use phonon_thermo_core::steady_state::Variant;
    use phonon_thermo_core::sweep::{evaluate_at, FixedConfig, SweepParameter};

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{"grids": {{"temperature": {{"count": 24}}}}, "output": {{"dir": "{}"}}}}"#,
            dir.path().join("out").display()
        ),
    );
    let out = run(&["sweep", "--axis", "temperature", "--config", &cfg]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("out/sweep_temperature.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "axis_name,axis_value,P_e,dPe_dT,F_Q,f,omega_eff,gamma"
    );
    let base = FixedConfig::new(
        ProbeConfig::new(1.0, 0.5, DriveMode::Bare).unwrap(),
        BathConfig::new(0.6, 0.8, 1.0).unwrap(),
        1.0,
        Variant::Paper,
    )
    .unwrap();
    let mut rows = 0;
    for line in lines {
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 8);
        assert_eq!(fields[0], "temperature");
        let t: f64 = fields[1].parse().unwrap();
        let cell = evaluate_at(&base, SweepParameter::Temperature, t).unwrap();
        // Printed precision is full round-trip precision, so re-evaluating
        // the parsed abscissa must land on the identical bit patterns.
        let expect = [
            cell.qfi.p_e,
            cell.qfi.dpe_dt,
            cell.qfi.f_q,
            cell.f,
            cell.omega_eff,
            cell.gamma,
        ];
        for (field, value) in fields[2..].iter().zip(expect) {
            let parsed: f64 = field.parse().unwrap();
            assert_eq!(parsed.to_bits(), value.to_bits(), "row {t}");
        }
        rows += 1;
    }
    assert_eq!(rows, 24);
}

#[test]
fn sweep_records_impossible_cells_as_empty_fields() {
    let dir = tempfile::tempdir().unwrap();
    // A drive axis that starts at zero amplitude: the first cell violates
    // the probe's invariant and must be marked, not kill the sweep.
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{"grids": {{"drive": {{"start": 0.0, "stop": 1.0, "count": 6}}}}, "output": {{"dir": "{}"}}}}"#,
            dir.path().join("out").display()
        ),
    );
    let out = run(&["sweep", "--axis", "drive", "--config", &cfg]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("1 empty cells"));
    let csv = std::fs::read_to_string(dir.path().join("out/sweep_drive.csv")).unwrap();
    let first_row = csv.lines().nth(1).unwrap();
    assert_eq!(first_row, "drive,0,,,,,,");
    let second_row = csv.lines().nth(2).unwrap();
    assert!(second_row.starts_with("drive,0.2,"));
    assert!(!second_row.contains(",,"));
}

#[test]
fn heatmap_is_row_major_with_ascending_temperature_then_coupling() {
    use phonon_thermo_core::bath::{BathConfig, DriveMode, ProbeConfig};
    use phonon_thermo_core::steady_state::Variant;
    use phonon_thermo_core::sweep::{evaluate_at, FixedConfig, SweepParameter};

    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{"grids": {{"temperature": {{"count": 10}}, "coupling": {{"count": 8}}}}, "output": {{"dir": "{}"}}}}"#,
            dir.path().join("out").display()
        ),
    );
    let out = run(&["heatmap", "--config", &cfg]);
    assert!(out.status.success(), "{}", stderr(&out));
    let csv = std::fs::read_to_string(dir.path().join("out/heatmap.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "T,eta,F_Q");
    assert_eq!(lines.len(), 1 + 10 * 8);
    // First block shares the lowest temperature while coupling ascends.
    let t0: f64 = lines[1].split(',').next().unwrap().parse().unwrap();
    assert_eq!(t0, 0.05);
    let mut previous_eta = f64::MIN;
    for line in &lines[1..9] {
        let fields: Vec<&str> = line.split(',').collect();
        let t: f64 = fields[0].parse().unwrap();
        let eta: f64 = fields[1].parse().unwrap();
        assert_eq!(t, t0);
        assert!(eta > previous_eta);
        previous_eta = eta;
    }
    // Next block moves to the next temperature.
    let t1: f64 = lines[9].split(',').next().unwrap().parse().unwrap();
    assert!(t1 > t0);

    // Any row reproduces under re-evaluation at full precision.
    let base = FixedConfig::new(
        ProbeConfig::new(1.0, 0.5, DriveMode::Bare).unwrap(),
        BathConfig::new(0.6, 0.8, 1.0).unwrap(),
        1.0,
        Variant::Paper,
    )
    .unwrap();
    let fields: Vec<&str> = lines[37].split(',').collect();
    let t: f64 = fields[0].parse().unwrap();
    let eta: f64 = fields[1].parse().unwrap();
    let row = base.with_parameter(SweepParameter::Temperature, t).unwrap();
    let cell = evaluate_at(&row, SweepParameter::Coupling, eta).unwrap();
    let f_q: f64 = fields[2].parse().unwrap();
    assert_eq!(f_q.to_bits(), cell.qfi.f_q.to_bits());
}

#[test]
fn svg_artifacts_are_wellformed_and_selfcontained() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        &format!(
            r#"{{"grids": {{"temperature": {{"count": 16}}, "coupling": {{"count": 12}}}}, "output": {{"dir": "{}", "svg": true}}}}"#,
            dir.path().join("out").display()
        ),
    );
    for cmd in [["sweep", "--config", &cfg], ["heatmap", "--config", &cfg]] {
        let out = run(&cmd);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    for name in ["sweep_temperature.svg", "heatmap.svg"] {
        let svg = std::fs::read_to_string(dir.path().join("out").join(name)).unwrap();
        assert!(svg.starts_with("<svg "), "{name}");
        assert!(svg.trim_end().ends_with("</svg>"), "{name}");
        assert_balanced_xml(&svg);
        // Self-contained: nothing referenced outside the document. The
        // xmlns attribute is a namespace identifier, not a fetched URL.
        assert!(!svg.contains("href"), "{name}");
        assert!(!svg.contains("@import"), "{name}");
        assert!(!svg.contains("<script"), "{name}");
    }
}

#[test]
fn identical_invocations_produce_identical_artifacts() {
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let out = run(&[
            "sweep",
            "--axis",
            "cutoff",
            "--out",
            dir.path().to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let a = std::fs::read(dir_a.path().join("sweep_cutoff.csv")).unwrap();
    let b = std::fs::read(dir_b.path().join("sweep_cutoff.csv")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn optimize_defaults_to_coupling_and_writes_the_scan() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["optimize", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("optimize coupling:"), "{text}");
    assert!(text.contains("interior"), "{text}");
    let csv = std::fs::read_to_string(dir.path().join("optimize_coupling.csv")).unwrap();
    assert_eq!(csv.lines().count(), 65);
}

#[test]
fn optimize_rejects_unsupported_axes() {
    let out = run(&["optimize", "--axis", "temperature"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["optimize", "--axis", "drive"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn limits_writes_the_three_block_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["limits", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report = std::fs::read_to_string(dir.path().join("limits.txt")).unwrap();
    assert!(report.contains("weak coupling"));
    assert!(report.contains("strong coupling"));
    assert!(report.contains("low temperature"));
    assert!(report.contains("overall: pass"));
}

#[test]
fn validate_passes_on_defaults_for_both_variants() {
    for variant in ["paper", "rederived"] {
        let out = run(&["validate", "--variant", variant]);
        assert!(out.status.success(), "{}: {}", variant, stderr(&out));
        let text = stdout(&out);
        assert!(text.contains("derivative suite"), "{text}");
        assert!(text.contains("steady-state suite"), "{text}");
        assert!(text.contains("identity suite"), "{text}");
        assert!(text.contains("monotonicity suite"), "{text}");
        assert!(text.contains("overall: pass"), "{text}");
    }
}
