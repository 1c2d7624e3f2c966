use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Job {
    Classify,
    Decay,
    Localized,
    Multiplier,
    Brackets,
    Catalog,
    Acceptance,
}

impl fmt::Display for Job {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Job::Classify => "classify",
            Job::Decay => "decay",
            Job::Localized => "localized",
            Job::Multiplier => "multiplier",
            Job::Brackets => "brackets",
            Job::Catalog => "catalog",
            Job::Acceptance => "acceptance",
        })
    }
}

/// One name or a list of names.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entries {
    One(String),
    Many(Vec<String>),
}

impl Entries {
    pub fn names(&self) -> Vec<String> {
        match self {
            Entries::One(s) => vec![s.clone()],
            Entries::Many(v) => v.clone(),
        }
    }
}

/// A job description. Every key but `job` may be omitted; the copy written next to the outputs
/// carries the defaults, so it describes the run completely.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub job: Option<Job>,
    pub entry: Option<Entries>,
    /// Inline oscillatory phase over x1..xd, z1..zd.
    pub phase: Option<String>,
    /// Base point of an inline phase, rationals as text.
    pub point: Option<Vec<String>>,
    pub lambda_min: Option<f64>,
    pub lambda_max: Option<f64>,
    pub lambda_ratio: Option<f64>,
    /// Explicit λ list; overrides the range fields.
    pub lambdas: Option<Vec<f64>>,
    /// Fixed λ of a localized run.
    pub lambda: Option<f64>,
    pub l: Option<Vec<u32>>,
    pub j: Option<u32>,
    pub k: Option<u32>,
    pub tol: f64,
    pub slope_tolerance: Option<f64>,
    pub doubling_threshold: f64,
    pub refinement_threshold: f64,
    pub strict_resolution: bool,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub svg: bool,
    pub alpha: Option<String>,
    pub beta: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let s = oscillab::experiments::SweepOptions::default();
        ExperimentConfig {
            job: None,
            entry: None,
            phase: None,
            point: None,
            lambda_min: None,
            lambda_max: None,
            lambda_ratio: None,
            lambdas: None,
            lambda: None,
            l: None,
            j: None,
            k: None,
            tol: s.tol,
            slope_tolerance: None,
            doubling_threshold: s.doubling_threshold,
            refinement_threshold: s.refinement_threshold,
            strict_resolution: false,
            seed: s.seed,
            out: None,
            svg: false,
            alpha: None,
            beta: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("config: cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn job(&self) -> Result<Job, CliError> {
        self.job.ok_or_else(|| CliError::Config("job: missing (give a subcommand or a \"job\" key)".into()))
    }

    pub fn entries(&self) -> Vec<String> {
        self.entry.as_ref().map(Entries::names).unwrap_or_default()
    }

    pub fn sweep_options(&self) -> oscillab::experiments::SweepOptions {
        oscillab::experiments::SweepOptions {
            tol: self.tol,
            strict: self.strict_resolution,
            seed: self.seed,
            doubling_threshold: self.doubling_threshold,
            refinement_threshold: self.refinement_threshold,
            slope_tolerance: self.slope_tolerance,
            ..Default::default()
        }
    }

    /// Checks key-level preconditions; messages name the key.
    pub fn validate(&self) -> Result<(), CliError> {
        let job = self.job()?;
        let bad = |key: &str, why: String| Err(CliError::Config(format!("{key}: {why}")));
        if !(1e-8..=1e-3).contains(&self.tol) {
            return bad("tol", format!("must lie in [1e-8, 1e-3], got {:e}", self.tol));
        }
        if let Some(t) = self.slope_tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return bad("slope_tolerance", format!("must be positive, got {t}"));
            }
        }
        for (key, v) in [("doubling_threshold", self.doubling_threshold), ("refinement_threshold", self.refinement_threshold)] {
            if !(v > 0.0 && v.is_finite()) {
                return bad(key, format!("must be positive, got {v}"));
            }
        }
        for (key, v) in [("lambda_min", self.lambda_min), ("lambda_max", self.lambda_max), ("lambda", self.lambda)] {
            if let Some(v) = v {
                if !(v > 0.0 && v.is_finite()) {
                    return bad(key, format!("must be positive, got {v}"));
                }
            }
        }
        if let Some(r) = self.lambda_ratio {
            if !(r > 1.0 && r.is_finite()) {
                return bad("lambda_ratio", format!("must exceed 1, got {r}"));
            }
        }
        if let (Some(a), Some(b)) = (self.lambda_min, self.lambda_max) {
            if a >= b {
                return bad("lambda_max", format!("must exceed lambda_min ({a}), got {b}"));
            }
        }
        if self.svg && self.out.is_none() {
            return bad("svg", "needs an output directory (out)".into());
        }
        if self.entry.is_some() && self.phase.is_some() {
            return bad("phase", "give either entry or phase, not both".into());
        }
        if self.point.is_some() && self.phase.is_none() {
            return bad("point", "only applies to an inline phase".into());
        }
        if matches!(self.entry, Some(Entries::Many(ref v)) if v.is_empty()) {
            return bad("entry", "list is empty".into());
        }
        match job {
            Job::Classify | Job::Decay | Job::Multiplier if self.entry.is_none() && self.phase.is_none() => {
                bad("entry", format!("the {job} job needs an entry or an inline phase"))
            }
            Job::Multiplier if self.phase.is_some() => bad("phase", "inline phases have no multiplier model".into()),
            Job::Brackets if self.entries().len() > 1 => bad("entry", "brackets takes a single group".into()),
            Job::Localized if self.entries().len() > 1 => bad("entry", "localized takes a single entry".into()),
            Job::Brackets | Job::Catalog | Job::Acceptance if self.phase.is_some() => {
                bad("phase", format!("the {job} job takes no inline phase"))
            }
            _ if (self.j.is_some()) != (self.k.is_some()) => bad(if self.j.is_some() { "k" } else { "j" }, "j and k go together".into()),
            _ => Ok(()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_are_rejected() {
        let e = ExperimentConfig::from_json(r#"{"job": "decay", "lamda_min": 4}"#).unwrap_err();
        assert!(e.to_string().contains("lamda_min"), "{e}");
    }

    #[test]
    fn defaults_fill_in() {
        let c = ExperimentConfig::from_json(r#"{"job": "decay", "entry": "twosided_3"}"#).unwrap();
        assert_eq!(c.tol, 1e-7);
        assert_eq!(c.entries(), vec!["twosided_3"]);
        c.validate().unwrap();
        let c = ExperimentConfig::from_json(r#"{"job": "decay", "entry": ["a", "b"]}"#).unwrap();
        assert_eq!(c.entries().len(), 2);
    }

    #[test]
    fn validation_names_the_key() {
        let c = ExperimentConfig::from_json(r#"{"job": "decay", "entry": "x", "tol": 0.1}"#).unwrap();
        assert!(c.validate().unwrap_err().to_string().starts_with("tol:"));
        let c = ExperimentConfig::from_json(r#"{"job": "decay"}"#).unwrap();
        assert!(c.validate().unwrap_err().to_string().starts_with("entry:"));
        let c = ExperimentConfig::from_json(r#"{"job": "localized", "j": 1}"#).unwrap();
        assert!(c.validate().unwrap_err().to_string().starts_with("k:"));
        let c = ExperimentConfig::from_json(r#"{"entry": "x"}"#).unwrap();
        assert!(c.validate().unwrap_err().to_string().starts_with("job:"));
    }
}
