//! JSON run configuration: schema, documented defaults, validation, and
//! command-line overrides.
//!
//! The document shape is
//!
//! ```json
//! {
//!   "probe":       { "omega0": 1.0, "Omega": 0.5, "drive_mode": "bare" },
//!   "bath":        { "eta": 0.6, "omega_c": 0.8, "s": 1.0 },
//!   "temperature": 1.0,
//!   "variant":     "paper",
//!   "grids": {
//!     "temperature": { "start": 0.05, "stop": 3.0,  "count": 200, "scale": "linear" },
//!     "coupling":    { "start": 0.01, "stop": 5.0,  "count": 200, "scale": "linear" },
//!     "cutoff":      { "start": 0.5,  "stop": 20.0, "count": 200, "scale": "log" },
//!     "drive":       { "start": 0.1,  "stop": 1.0,  "count": 200, "scale": "linear" }
//!   },
//!   "output":      { "dir": "out", "svg": false }
//! }
//! ```
//!
//! Every key is optional and defaults to the value shown above; unknown keys
//! are rejected with the offending key named. All computation downstream of
//! a parsed configuration is deterministic — there is no randomness anywhere
//! in the pipeline, so a configuration fully determines every artifact byte.

use crate::error::{CliError, Result};
use phonon_thermo_core::bath::{BathConfig, DriveMode, ProbeConfig};
use phonon_thermo_core::steady_state::Variant;
use phonon_thermo_core::sweep::{AxisScale, AxisSpec, FixedConfig, SweepParameter};
use serde::Deserialize;
use std::path::PathBuf;

const DEFAULT_OMEGA0: f64 = 1.0;
const DEFAULT_DRIVE: f64 = 0.5;
const DEFAULT_ETA: f64 = 0.6;
const DEFAULT_OMEGA_C: f64 = 0.8;
const DEFAULT_S: f64 = 1.0;
const DEFAULT_TEMPERATURE: f64 = 1.0;
const DEFAULT_OUTPUT_DIR: &str = "out";

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawDriveMode {
    Bare,
    Renormalized,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawVariant {
    Paper,
    Rederived,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawScale {
    Linear,
    Log,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProbe {
    omega0: Option<f64>,
    #[serde(rename = "Omega")]
    drive: Option<f64>,
    drive_mode: Option<RawDriveMode>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBath {
    eta: Option<f64>,
    omega_c: Option<f64>,
    s: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxis {
    start: Option<f64>,
    stop: Option<f64>,
    count: Option<usize>,
    scale: Option<RawScale>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGrids {
    temperature: Option<RawAxis>,
    coupling: Option<RawAxis>,
    cutoff: Option<RawAxis>,
    drive: Option<RawAxis>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: Option<PathBuf>,
    svg: Option<bool>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    probe: Option<RawProbe>,
    bath: Option<RawBath>,
    temperature: Option<f64>,
    variant: Option<RawVariant>,
    grids: Option<RawGrids>,
    output: Option<RawOutput>,
}

/// The four named grids a configuration carries, one per sweep parameter.
#[derive(Debug, Clone, Copy)]
pub struct Grids {
    /// Temperature axis (default 0.05..3, 200 points, linear).
    pub temperature: AxisSpec,
    /// Coupling axis (default 0.01..5, 200 points, linear).
    pub coupling: AxisSpec,
    /// Cutoff axis (default 0.5..20, 200 points, log).
    pub cutoff: AxisSpec,
    /// Drive axis (default 0.1..1, 200 points, linear).
    pub drive: AxisSpec,
}

impl Grids {
    /// Grid registered for `parameter`.
    pub fn axis(&self, parameter: SweepParameter) -> AxisSpec {
        match parameter {
            SweepParameter::Temperature => self.temperature,
            SweepParameter::Coupling => self.coupling,
            SweepParameter::Cutoff => self.cutoff,
            SweepParameter::Drive => self.drive,
        }
    }
}

/// Fully validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Probe parameters (splitting, drive amplitude, drive dressing mode).
    pub probe: ProbeConfig,
    /// Bath parameters (coupling, cutoff, Ohmicity exponent).
    pub bath: BathConfig,
    /// Operating temperature.
    pub temperature: f64,
    /// Closed-form variant used for populations and derivatives.
    pub variant: Variant,
    /// Named sweep grids.
    pub grids: Grids,
    /// Directory artifacts are written into (created on demand).
    pub output_dir: PathBuf,
    /// Whether file-writing commands also render SVG figures.
    pub emit_svg: bool,
}

fn config_err(e: phonon_thermo_core::Error) -> CliError {
    CliError::Config(e.to_string())
}

fn resolve_axis(
    parameter: SweepParameter,
    raw: Option<RawAxis>,
    defaults: (f64, f64, usize, AxisScale),
) -> Result<AxisSpec> {
    let raw = raw.unwrap_or_default();
    let scale = match raw.scale {
        Some(RawScale::Linear) => AxisScale::Linear,
        Some(RawScale::Log) => AxisScale::Log,
        None => defaults.3,
    };
    AxisSpec::new(
        parameter,
        raw.start.unwrap_or(defaults.0),
        raw.stop.unwrap_or(defaults.1),
        raw.count.unwrap_or(defaults.2),
        scale,
    )
    .map_err(|e| CliError::Config(format!("grid \"{}\": {e}", parameter.name())))
}

impl RunConfig {
    fn from_raw(raw: RawConfig) -> Result<Self> {
        let p = raw.probe.unwrap_or_default();
        let probe = ProbeConfig::new(
            p.omega0.unwrap_or(DEFAULT_OMEGA0),
            p.drive.unwrap_or(DEFAULT_DRIVE),
            match p.drive_mode {
                Some(RawDriveMode::Renormalized) => DriveMode::Renormalized,
                _ => DriveMode::Bare,
            },
        )
        .map_err(config_err)?;

        let b = raw.bath.unwrap_or_default();
        let bath = BathConfig::new(
            b.eta.unwrap_or(DEFAULT_ETA),
            b.omega_c.unwrap_or(DEFAULT_OMEGA_C),
            b.s.unwrap_or(DEFAULT_S),
        )
        .map_err(config_err)?;

        let temperature = raw.temperature.unwrap_or(DEFAULT_TEMPERATURE);
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(CliError::Config(
                "temperature must be positive and finite".into(),
            ));
        }

        let variant = match raw.variant {
            Some(RawVariant::Rederived) => Variant::Rederived,
            _ => Variant::Paper,
        };

        let g = raw.grids.unwrap_or_default();
        let grids = Grids {
            temperature: resolve_axis(
                SweepParameter::Temperature,
                g.temperature,
                (0.05, 3.0, 200, AxisScale::Linear),
            )?,
            coupling: resolve_axis(
                SweepParameter::Coupling,
                g.coupling,
                (0.01, 5.0, 200, AxisScale::Linear),
            )?,
            cutoff: resolve_axis(
                SweepParameter::Cutoff,
                g.cutoff,
                (0.5, 20.0, 200, AxisScale::Log),
            )?,
            drive: resolve_axis(
                SweepParameter::Drive,
                g.drive,
                (0.1, 1.0, 200, AxisScale::Linear),
            )?,
        };

        let o = raw.output.unwrap_or_default();
        Ok(Self {
            probe,
            bath,
            temperature,
            variant,
            grids,
            output_dir: o.dir.unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR)),
            emit_svg: o.svg.unwrap_or(false),
        })
    }

    /// Operating point handed to the computation kernels.
    pub fn base(&self) -> Result<FixedConfig> {
        FixedConfig::new(self.probe, self.bath, self.temperature, self.variant).map_err(Into::into)
    }

    /// Replaces the bath coupling (`--eta`).
    pub fn override_eta(&mut self, eta: f64) -> Result<()> {
        self.bath = BathConfig::new(eta, self.bath.omega_c(), self.bath.s()).map_err(config_err)?;
        Ok(())
    }

    /// Replaces the bath cutoff (`--cutoff`).
    pub fn override_cutoff(&mut self, omega_c: f64) -> Result<()> {
        self.bath = BathConfig::new(self.bath.eta(), omega_c, self.bath.s()).map_err(config_err)?;
        Ok(())
    }

    /// Replaces the operating temperature (`--temp`).
    pub fn override_temperature(&mut self, temperature: f64) -> Result<()> {
        if !(temperature > 0.0) || !temperature.is_finite() {
            return Err(CliError::Config(
                "temperature must be positive and finite".into(),
            ));
        }
        self.temperature = temperature;
        Ok(())
    }
}

/// Parses and validates a JSON configuration document.
///
/// Malformed documents and unknown keys are reported with serde's line and
/// column context; invariant violations carry the offending key's name.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig =
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    RunConfig::from_raw(raw)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_yields_all_defaults() {
        let cfg = parse_config("{}").unwrap();
        assert_eq!(cfg.probe.omega0(), 1.0);
        assert_eq!(cfg.probe.drive(), 0.5);
        assert_eq!(cfg.probe.drive_mode(), DriveMode::Bare);
        assert_eq!(cfg.bath.eta(), 0.6);
        assert_eq!(cfg.bath.omega_c(), 0.8);
        assert_eq!(cfg.bath.s(), 1.0);
        assert_eq!(cfg.temperature, 1.0);
        assert_eq!(cfg.variant, Variant::Paper);
        assert_eq!(cfg.grids.temperature.count(), 200);
        assert_eq!(cfg.grids.cutoff.scale(), AxisScale::Log);
        assert_eq!(cfg.output_dir, PathBuf::from("out"));
        assert!(!cfg.emit_svg);
    }

    #[test]
    fn unknown_keys_are_rejected_by_name() {
        let err = parse_config(r#"{"bogus": 1}"#).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
        let err = parse_config(r#"{"probe": {"detuning": 1}}"#).unwrap_err();
        assert!(err.to_string().contains("detuning"), "{err}");
    }

    #[test]
    fn invariant_violations_name_the_key() {
        let err = parse_config(r#"{"bath": {"eta": -1}}"#).unwrap_err();
        assert!(err.to_string().contains("eta"), "{err}");
        assert_eq!(err.exit_code(), 2);
        let err = parse_config(r#"{"temperature": 0}"#).unwrap_err();
        assert!(err.to_string().contains("temperature"), "{err}");
        let err = parse_config(r#"{"bath": {"s": 2}}"#).unwrap_err();
        assert!(err.to_string().contains('s'), "{err}");
    }

    #[test]
    fn partial_grid_overrides_keep_remaining_defaults() {
        let cfg = parse_config(r#"{"grids": {"temperature": {"count": 50}}}"#).unwrap();
        assert_eq!(cfg.grids.temperature.count(), 50);
        assert_eq!(cfg.grids.temperature.start(), 0.05);
        assert_eq!(cfg.grids.temperature.stop(), 3.0);
        assert_eq!(cfg.grids.coupling.count(), 200);
    }

    #[test]
    fn bad_grid_is_reported_with_its_name() {
        let err =
            parse_config(r#"{"grids": {"cutoff": {"start": 5, "stop": 1}}}"#).unwrap_err();
        assert!(err.to_string().contains("cutoff"), "{err}");
    }

    #[test]
    fn drive_amplitude_uses_the_capitalized_key() {
        let cfg = parse_config(r#"{"probe": {"Omega": 0.25}}"#).unwrap();
        assert_eq!(cfg.probe.drive(), 0.25);
        // Lower-case "omega" is not a key of the schema.
        assert!(parse_config(r#"{"probe": {"omega": 0.25}}"#).is_err());
    }

    #[test]
    fn variant_and_drive_mode_strings_parse() {
        let cfg = parse_config(
            r#"{"variant": "rederived", "probe": {"drive_mode": "renormalized"}}"#,
        )
        .unwrap();
        assert_eq!(cfg.variant, Variant::Rederived);
        assert_eq!(cfg.probe.drive_mode(), DriveMode::Renormalized);
        let err = parse_config(r#"{"variant": "exact"}"#).unwrap_err();
        assert!(err.to_string().contains("exact"), "{err}");
    }

    #[test]
    fn overrides_rebuild_the_embedded_configs() {
        let mut cfg = parse_config("{}").unwrap();
        cfg.override_eta(1.5).unwrap();
        cfg.override_cutoff(5.0).unwrap();
        cfg.override_temperature(0.3).unwrap();
        assert_eq!(cfg.bath.eta(), 1.5);
        assert_eq!(cfg.bath.omega_c(), 5.0);
        assert_eq!(cfg.temperature, 0.3);
        assert!(cfg.override_eta(-0.1).is_err());
        assert!(cfg.override_temperature(f64::NAN).is_err());
    }

    #[test]
    fn malformed_json_reports_position_context() {
        let err = parse_config("{ not json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "{msg}");
        assert!(msg.contains("column"), "{msg}");
    }
}
