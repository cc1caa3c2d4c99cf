//! JSON run configurations for the command-line tool.
//!
//! Parsing rejects unknown fields and reports the JSON path of the first offending
//! field. Optional settings with defaults (`policy`, `format`, `seed`, `scale`) are
//! filled in on parse, so the serialized config echo records every value used.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::classify::Policy;
use crate::error::{Error, Result};
use crate::fuzzy::FuzzyNumber;
use crate::harness::{Scenario, ScenarioName};
use crate::sequence::FuzzySequence;
use crate::weights::WeightScheme;

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Membership,
    Variation,
    Rowsums,
    Density,
    Cesaro,
    MetricD,
    Scenario,
    AllScenarios,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Membership => "membership",
            Command::Variation => "variation",
            Command::Rowsums => "rowsums",
            Command::Density => "density",
            Command::Cesaro => "cesaro",
            Command::MetricD => "metric-d",
            Command::Scenario => "scenario",
            Command::AllScenarios => "all-scenarios",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// A scenario given either by name (default parameters) or as a full parameter record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScenarioSpec {
    Named(ScenarioName),
    Full(Box<Scenario>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<FuzzySequence>,
    /// Second sequence for `metric-d`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<FuzzySequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scheme: Option<WeightScheme>,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    /// Cesàro limit `L`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<FuzzyNumber>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scenario: Option<ScenarioSpec>,
    #[serde(default)]
    pub policy: Policy,
    #[serde(default)]
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_scale")]
    pub scale: usize,
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_scale() -> usize {
    1
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            sequence: None,
            other: None,
            scheme: None,
            horizon: None,
            eps: None,
            p: None,
            limit: None,
            scenario: None,
            policy: Policy::default(),
            format: Format::default(),
            out: None,
            seed: DEFAULT_SEED,
            scale: 1,
        }
    }

    pub fn sequence(&self) -> Result<&FuzzySequence> {
        require(self.sequence.as_ref(), "sequence", self.command)
    }

    pub fn scheme(&self) -> Result<&WeightScheme> {
        require(self.scheme.as_ref(), "scheme", self.command)
    }

    pub fn horizon(&self) -> Result<usize> {
        require(self.horizon.as_ref(), "K", self.command).copied()
    }

    /// The scenario to run, with named scenarios expanded to their default parameters.
    pub fn resolved_scenario(&self) -> Result<Scenario> {
        match require(self.scenario.as_ref(), "scenario", self.command)? {
            ScenarioSpec::Named(name) => Scenario::default_for(*name, self.seed, self.scale),
            ScenarioSpec::Full(sc) => Ok((**sc).clone()),
        }
    }

    /// Checks the per-command requirements; [`parse_config`] calls this.
    pub fn validate(&self) -> Result<()> {
        self.policy
            .validate()
            .map_err(|e| Error::config("policy", e.to_string()))?;
        if self.scale == 0 {
            return Err(Error::config("scale", "must be at least 1"));
        }
        if let Some(eps) = self.eps {
            if !(eps > 0.0 && eps.is_finite()) {
                return Err(Error::config("eps", format!("must be positive and finite, got {eps}")));
            }
        }
        if let Some(p) = self.p {
            if !(p >= 1.0 && p.is_finite()) {
                return Err(Error::config("p", format!("must be finite and at least 1, got {p}")));
            }
        }
        use Command::*;
        let c = self.command;
        if matches!(c, Membership | Variation | Density | Cesaro | MetricD) {
            self.sequence()?;
        }
        if matches!(c, Membership | Variation | Rowsums | MetricD) {
            self.scheme()?;
        }
        if !matches!(c, Scenario | AllScenarios) {
            let k = self.horizon()?;
            for (field, start) in [
                ("sequence.start", self.sequence.as_ref().map(|s| s.start)),
                ("other.start", self.other.as_ref().map(|s| s.start)),
                ("scheme.start", self.scheme.as_ref().map(|s| s.start)),
            ] {
                if let Some(start) = start {
                    if k < start {
                        return Err(Error::config("K", format!("horizon {k} is below {field} = {start}")));
                    }
                }
            }
        }
        if let (Some(x), Some(s)) = (&self.sequence, &self.scheme) {
            if x.start != s.start {
                return Err(Error::config(
                    "scheme.start",
                    format!("scheme starts at {} but the sequence starts at {}", s.start, x.start),
                ));
            }
        }
        if let Some(s) = &self.scheme {
            let k = self.horizon.unwrap_or(s.start);
            s.check_admissible(k)
                .map_err(|e| Error::config("scheme", e.to_string()))?;
        }
        match c {
            Density => {
                require(self.eps.as_ref(), "eps", c)?;
            }
            Cesaro => {
                require(self.limit.as_ref(), "limit", c)?;
            }
            MetricD => {
                let other = require(self.other.as_ref(), "other", c)?;
                if other.start != self.sequence()?.start {
                    return Err(Error::config(
                        "other.start",
                        "both sequences must share the start index",
                    ));
                }
            }
            Scenario => {
                self.resolved_scenario()?;
            }
            _ => {}
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

fn require<'a, T>(value: Option<&'a T>, field: &str, command: Command) -> Result<&'a T> {
    value.ok_or_else(|| Error::config(field, format!("required by command `{}`", command.as_str())))
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::config(
            if path == "." { "<root>".to_string() } else { path },
            e.into_inner().to_string(),
        )
    })?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ROWSUMS: &str = r#"{"command":"rowsums","scheme":{"u":{"family":"power","a":1,"p":-4},"v":{"family":"const","c":1},"start":1},"K":10000}"#;

    fn field_of(r: Result<RunConfig>) -> String {
        match r {
            Err(Error::Config { field, .. }) => field,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn rowsums_example_parses_with_defaults() {
        let cfg = parse_config(ROWSUMS).unwrap();
        assert_eq!(cfg.command, Command::Rowsums);
        assert_eq!(cfg.horizon, Some(10_000));
        assert_eq!(cfg.policy, Policy::default());
        assert_eq!(cfg.seed, DEFAULT_SEED);
        let echo = cfg.to_json().unwrap();
        assert!(echo.contains("\"policy\"") && echo.contains("\"seed\""));
        assert_eq!(parse_config(&echo).unwrap(), cfg);
    }

    #[test]
    fn zero_weight_rejected() {
        let text = ROWSUMS.replace(r#""c":1"#, r#""c":0"#);
        assert_eq!(field_of(parse_config(&text)), "scheme");
    }

    #[test]
    fn horizon_below_start_rejected() {
        let text = ROWSUMS.replace("10000", "0");
        assert_eq!(field_of(parse_config(&text)), "K");
    }

    #[test]
    fn unknown_and_malformed_fields_report_paths() {
        let text = ROWSUMS.replace(r#""K""#, r#""horizon""#);
        assert_eq!(field_of(parse_config(&text)), "horizon");
        let text = ROWSUMS.replace(r#""p":-4"#, r#""p":"x""#);
        assert_eq!(field_of(parse_config(&text)), "scheme.u");
        assert_eq!(field_of(parse_config(r#"{"command":"nope"}"#)), "command");
    }

    #[test]
    fn missing_required_fields() {
        assert_eq!(field_of(parse_config(r#"{"command":"rowsums","K":3}"#)), "scheme");
        assert_eq!(field_of(parse_config(r#"{"command":"scenario"}"#)), "scenario");
        let density = r#"{"command":"density","K":10,
            "sequence":{"family":{"kind":"crisp","value":{"family":"const","c":0}}}}"#;
        assert_eq!(field_of(parse_config(density)), "eps");
        let bad_eps = density.replace(r#""K":10"#, r#""K":10,"eps":-1"#);
        assert_eq!(field_of(parse_config(&bad_eps)), "eps");
    }

    #[test]
    fn scenario_by_name_or_record() {
        let cfg = parse_config(r#"{"command":"scenario","scenario":"R2_CONVERSE","scale":2}"#).unwrap();
        let sc = cfg.resolved_scenario().unwrap();
        assert_eq!(sc.name(), ScenarioName::R2Converse);
        let full = RunConfig {
            scenario: Some(ScenarioSpec::Full(Box::new(sc.clone()))),
            ..RunConfig::new(Command::Scenario)
        };
        let back = parse_config(&full.to_json().unwrap()).unwrap();
        assert_eq!(back.resolved_scenario().unwrap(), sc);
    }
}
