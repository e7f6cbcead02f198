use std::fmt;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::dynamics::analytic_preconditions;
use crate::entanglement::{InitialFamily, InitialStateSpec};
use crate::error::{Error, Result};
use crate::model::{diagonalize, ModelParams};
use crate::rates::{lindblad_rates, BathSpectrum};

const FIG2: &str = include_str!("../../presets/fig2.json");
const FIG3: &str = include_str!("../../presets/fig3.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Solver {
    /// Closed-form zero-temperature solution; requires its preconditions.
    Analytic,
    /// Adaptive Runge-Kutta integration of the full generator.
    Numeric,
    /// Analytic when its preconditions hold, numeric otherwise.
    Auto,
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Solver::Analytic => "analytic",
            Solver::Numeric => "numeric",
            Solver::Auto => "auto",
        })
    }
}

/// Scalar config keys that a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum SweepParam {
    #[serde(rename = "omega1")]
    Omega1,
    #[serde(rename = "omega2")]
    Omega2,
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "gamma1_I")]
    Gamma1I,
    #[serde(rename = "gamma1_II")]
    Gamma1II,
    #[serde(rename = "gamma2_I")]
    Gamma2I,
    #[serde(rename = "gamma2_II")]
    Gamma2II,
    T1,
    T2,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "phi")]
    Phi,
    #[serde(rename = "t_end")]
    TEnd,
}

impl SweepParam {
    pub fn key(&self) -> &'static str {
        match self {
            SweepParam::Omega1 => "omega1",
            SweepParam::Omega2 => "omega2",
            SweepParam::Lambda => "lambda",
            SweepParam::Gamma1I => "gamma1_I",
            SweepParam::Gamma1II => "gamma1_II",
            SweepParam::Gamma2I => "gamma2_I",
            SweepParam::Gamma2II => "gamma2_II",
            SweepParam::T1 => "T1",
            SweepParam::T2 => "T2",
            SweepParam::P => "p",
            SweepParam::Phi => "phi",
            SweepParam::TEnd => "t_end",
        }
    }

    fn apply(&self, cfg: &mut ScenarioConfig, v: f64) {
        let m = &mut cfg.model;
        match self {
            SweepParam::Omega1 => m.omega1 = v,
            SweepParam::Omega2 => m.omega2 = v,
            SweepParam::Lambda => m.lambda = v,
            SweepParam::Gamma1I => m.bath1.gamma_at_omega_i = v,
            SweepParam::Gamma1II => m.bath1.gamma_at_omega_ii = v,
            SweepParam::Gamma2I => m.bath2.gamma_at_omega_i = v,
            SweepParam::Gamma2II => m.bath2.gamma_at_omega_ii = v,
            SweepParam::T1 => m.bath1.temperature = v,
            SweepParam::T2 => m.bath2.temperature = v,
            SweepParam::P => cfg.initial.p = v,
            SweepParam::Phi => cfg.initial.phi = v,
            SweepParam::TEnd => cfg.t_end = Some(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub param: SweepParam,
    pub values: Vec<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    omega1: f64,
    omega2: f64,
    lambda: f64,
    #[serde(rename = "gamma1_I")]
    gamma1_i: f64,
    #[serde(rename = "gamma1_II")]
    gamma1_ii: f64,
    #[serde(rename = "gamma2_I")]
    gamma2_i: f64,
    #[serde(rename = "gamma2_II")]
    gamma2_ii: f64,
    #[serde(rename = "T1")]
    t1: f64,
    #[serde(rename = "T2")]
    t2: f64,
    initial_family: InitialFamily,
    p: f64,
    #[serde(default)]
    phi: f64,
    #[serde(default)]
    t_end: Option<f64>,
    #[serde(default = "default_samples")]
    samples: usize,
    #[serde(default = "default_solver")]
    solver: Solver,
    output: PathBuf,
    #[serde(default)]
    sweep: Option<Sweep>,
}

fn default_samples() -> usize {
    2001
}

fn default_solver() -> Solver {
    Solver::Auto
}

/// A validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub model: ModelParams,
    pub initial: InitialStateSpec,
    /// `None` selects `10 / (smallest nonzero decay rate)`.
    pub t_end: Option<f64>,
    pub samples: usize,
    pub solver: Solver,
    pub output_path: PathBuf,
    pub sweep: Option<Sweep>,
}

fn prefixed(prefix: &str, err: Error) -> Error {
    match err {
        Error::InvalidParameter { field, reason } => Error::InvalidParameter {
            field: format!("{prefix}.{field}"),
            reason,
        },
        other => other,
    }
}

impl ScenarioConfig {
    /// Checks every invariant of this single scenario (the sweep is ignored).
    pub fn validate_point(&self) -> Result<()> {
        self.model.validate().map_err(|e| prefixed("model", e))?;
        self.initial.validate()?;
        if let Some(t) = self.t_end {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::param("t_end", format!("{t} must be finite and > 0")));
            }
        }
        if self.samples < 2 {
            return Err(Error::param("samples", format!("{} must be >= 2", self.samples)));
        }
        if self.solver == Solver::Analytic {
            let basis = diagonalize(&self.model)?;
            let rates = lindblad_rates(&basis, &self.model.bath1, &self.model.bath2)?;
            analytic_preconditions(&rates).map_err(|e| Error::param("solver", e.to_string()))?;
        }
        Ok(())
    }

    /// The scenarios to run: one per sweep value, or just this one.
    pub fn points(&self) -> Result<Vec<(Option<f64>, ScenarioConfig)>> {
        let Some(sweep) = &self.sweep else {
            return Ok(vec![(None, self.clone())]);
        };
        if sweep.values.is_empty() {
            return Err(Error::param("sweep.values", "must not be empty"));
        }
        sweep
            .values
            .iter()
            .map(|&v| {
                let mut point = self.clone();
                point.sweep = None;
                sweep.param.apply(&mut point, v);
                point.validate_point().map_err(|e| {
                    Error::Config(format!("sweep {}={v}: {e}", sweep.param.key()))
                })?;
                Ok((Some(v), point))
            })
            .collect()
    }
}

/// Parses and validates a scenario document.
pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    let raw: RawConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    let cfg = ScenarioConfig {
        model: ModelParams {
            omega1: raw.omega1,
            omega2: raw.omega2,
            lambda: raw.lambda,
            bath1: BathSpectrum::new(raw.gamma1_i, raw.gamma1_ii, raw.t1),
            bath2: BathSpectrum::new(raw.gamma2_i, raw.gamma2_ii, raw.t2),
        },
        initial: InitialStateSpec {
            family: raw.initial_family,
            p: raw.p,
            phi: raw.phi,
        },
        t_end: raw.t_end,
        samples: raw.samples,
        solver: raw.solver,
        output_path: raw.output,
        sweep: raw.sweep,
    };
    cfg.validate_point()?;
    cfg.points()?;
    Ok(cfg)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<ScenarioConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_config(&text).map_err(|e| match e {
        Error::Config(msg) => Error::Config(format!("{}: {msg}", path.display())),
        other => other,
    })
}

/// One of the shipped presets, `fig2` or `fig3`.
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    match name {
        "fig2" => parse_config(FIG2),
        "fig3" => parse_config(FIG3),
        other => Err(Error::Config(format!(
            "unknown preset `{other}` (expected fig2 or fig3)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn with(key: &str, value: &str) -> String {
        let mut v: serde_json::Value = serde_json::from_str(FIG2).unwrap();
        v[key] = serde_json::from_str(value).unwrap();
        v.to_string()
    }

    #[test]
    fn fig2_preset() {
        let cfg = preset("fig2").unwrap();
        assert_eq!(cfg.model.omega1, 10.0);
        assert_eq!(cfg.model.omega2, 10.0);
        assert_eq!(cfg.model.lambda, 1.0);
        assert_eq!(cfg.model.bath1, BathSpectrum::flat(0.01, 0.0));
        assert_eq!(cfg.model.bath2, BathSpectrum::flat(0.01, 0.0));
        assert_eq!(cfg.initial.family, InitialFamily::OneExcitation);
        assert_eq!(cfg.initial.p, 1.0);
        assert_eq!(cfg.solver, Solver::Auto);
    }

    #[test]
    fn fig3_preset() {
        let cfg = preset("fig3").unwrap();
        assert_eq!(cfg.initial.family, InitialFamily::TwoExcitation);
        assert_eq!(cfg.initial.p, 0.0);
        assert!(preset("fig4").is_err());
    }

    #[test]
    fn p_out_of_range_names_field() {
        let err = parse_config(&with("p", "1.5")).unwrap_err();
        assert!(err.to_string().contains("initial.p"), "{err}");
    }

    #[test]
    fn analytic_with_temperature_rejected() {
        let text = with("solver", "\"analytic\"");
        parse_config(&text).unwrap();
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v["T1"] = 0.5.into();
        let err = parse_config(&v.to_string()).unwrap_err();
        assert!(err.to_string().contains("solver"), "{err}");
        assert!(err.to_string().contains("preconditions"), "{err}");
    }

    #[test]
    fn unknown_key_is_named() {
        let err = parse_config(&with("gamma3_I", "0.1")).unwrap_err();
        assert!(err.to_string().contains("gamma3_I"), "{err}");
    }

    #[test]
    fn parse_error_reports_line() {
        let err = parse_config("{\n  \"omega1\": 1,\n  oops\n}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn model_errors_are_prefixed() {
        let err = parse_config(&with("omega2", "5.0")).unwrap_err();
        assert!(err.to_string().contains("model.omega2"), "{err}");
        let err = parse_config(&with("T2", "-1.0")).unwrap_err();
        assert!(err.to_string().contains("model.bath2.temperature"), "{err}");
    }

    #[test]
    fn sweep_points() {
        let cfg = parse_config(&with("sweep", r#"{"param": "lambda", "values": [0.5, 1, 2]}"#)).unwrap();
        let points = cfg.points().unwrap();
        assert_eq!(points.len(), 3);
        assert_eq!(points[2].0, Some(2.0));
        assert_eq!(points[2].1.model.lambda, 2.0);
        assert!(points.iter().all(|(_, p)| p.sweep.is_none()));
    }

    #[test]
    fn invalid_sweep_value_rejected() {
        let text = with("sweep", r#"{"param": "lambda", "values": [1, -2]}"#);
        let err = parse_config(&text).unwrap_err();
        assert!(err.to_string().contains("lambda=-2"), "{err}");
        let text = with("sweep", r#"{"param": "mass", "values": [1]}"#);
        assert!(parse_config(&text).is_err());
    }

    #[test]
    fn missing_file() {
        assert!(matches!(load_config("/nonexistent/cfg.json"), Err(Error::Config(_))));
    }
}
