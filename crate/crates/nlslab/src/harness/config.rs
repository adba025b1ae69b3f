//! Experiment configuration: JSON schema, defaults and validation.
//!
//! Unknown keys anywhere in a config file are errors, as are tolerance
//! names the selected experiment does not define. Default tolerances ship
//! in a versioned file compiled into the binary; config values override
//! them key by key.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::ModeGrid;
use crate::infotheory::ChannelSpec;
use crate::propagator::{ChannelParams, Scheme};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid field `{field}`: {reason}")]
    InvalidField { field: &'static str, reason: String },
    #[error("unknown tolerance key `{key}` for experiment {experiment}")]
    UnknownTolerance { key: String, experiment: String },
    #[error("missing tolerance key `{key}` for experiment {experiment}")]
    MissingTolerance { key: String, experiment: String },
    #[error("config parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// Experiment selector. JSON tokens match the CLI verbs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Experiment {
    /// Mean output power grows by the accumulated noise power.
    #[serde(rename = "lemma1")]
    PowerGrowth,
    /// The deterministic flow preserves phase-space volume.
    #[serde(rename = "lemma2")]
    VolumePreservation,
    /// The deterministic flow preserves differential entropy.
    #[serde(rename = "lemma3")]
    EntropyPreservation,
    /// Conditional entropy is bounded below by the noise entropy rate.
    #[serde(rename = "lemma4")]
    ConditionalEntropyBound,
    /// Entropy-power inequality spot checks.
    #[serde(rename = "epi")]
    EpiSuite,
    /// Output-entropy bounding chain, term by term.
    #[serde(rename = "chain")]
    ChainReport,
    /// Discrete entropy/sumset and Brunn–Minkowski checks.
    #[serde(rename = "appendix")]
    AppendixSuite,
    /// Mutual information vs the capacity bound across SNR or distance.
    #[serde(rename = "mi_bound_sweep")]
    MiBoundSweep,
}

impl Experiment {
    pub fn token(&self) -> &'static str {
        match self {
            Experiment::PowerGrowth => "lemma1",
            Experiment::VolumePreservation => "lemma2",
            Experiment::EntropyPreservation => "lemma3",
            Experiment::ConditionalEntropyBound => "lemma4",
            Experiment::EpiSuite => "epi",
            Experiment::ChainReport => "chain",
            Experiment::AppendixSuite => "appendix",
            Experiment::MiBoundSweep => "mi_bound_sweep",
        }
    }

    /// Tolerance keys this experiment reads.
    pub fn tolerance_keys(&self) -> &'static [&'static str] {
        match self {
            Experiment::PowerGrowth => &["stderr_multiplier"],
            Experiment::VolumePreservation => &["det_tolerance"],
            Experiment::EntropyPreservation => &["entropy_diff_tol"],
            Experiment::ConditionalEntropyBound => &["bound_slack", "linear_equality_tol"],
            Experiment::EpiSuite => &["stderr_multiplier"],
            Experiment::ChainReport => &["stderr_multiplier"],
            Experiment::AppendixSuite => &["rounding_slack"],
            Experiment::MiBoundSweep => &["margin_slack", "linear_match_tol"],
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n: usize,
    pub omega0: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    pub sigma0_sq: f64,
    pub z_total: f64,
    pub dz: f64,
    pub scheme: Scheme,
    pub nonlinearity_on: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub grid: GridConfig,
    pub channel: ChannelConfig,
    pub p0: f64,
    pub trials: usize,
    pub master_seed: u64,
    /// Overrides of the shipped default tolerances; unknown keys rejected.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// Base path for the JSON report and the CSV raw table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,

    /// Sweep points (`mi_bound_sweep` only; exactly one of the two).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snr_values: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z_values: Option<Vec<f64>>,

    /// Conditional-entropy controls (`lemma4`, `mi_bound_sweep`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input_points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials_per_point: Option<usize>,

    /// Jacobian-probe controls (`lemma2`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jacobian_grid_sizes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jacobian_distances: Option<Vec<f64>>,

    /// Neighbor count for the kNN entropy estimator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knn_k: Option<usize>,
}

pub const DEFAULT_TOLERANCES: &str = include_str!("../../assets/default_tolerances.json");

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ToleranceDefaults {
    #[allow(dead_code)]
    version: u32,
    experiments: BTreeMap<String, BTreeMap<String, f64>>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn mode_grid(&self) -> Result<ModeGrid, ConfigError> {
        ModeGrid::new(self.grid.n, self.grid.omega0).map_err(|e| ConfigError::InvalidField {
            field: "grid",
            reason: e.to_string(),
        })
    }

    pub fn channel_params(&self) -> ChannelParams {
        ChannelParams {
            sigma0_sq: self.channel.sigma0_sq,
            z_total: self.channel.z_total,
            dz: self.channel.dz,
            scheme: self.channel.scheme,
            nonlinearity_on: self.channel.nonlinearity_on,
        }
    }

    pub fn channel_spec(&self) -> Result<ChannelSpec, ConfigError> {
        Ok(ChannelSpec {
            grid: self.mode_grid()?,
            params: self.channel_params(),
        })
    }

    pub fn knn_k(&self) -> usize {
        self.knn_k.unwrap_or(5)
    }

    pub fn input_points(&self) -> usize {
        self.input_points.unwrap_or(20)
    }

    /// Trials per conditioning point; defaults to `trials`.
    pub fn trials_per_point(&self) -> usize {
        self.trials_per_point.unwrap_or(self.trials)
    }

    pub fn jacobian_grid_sizes(&self) -> Vec<usize> {
        self.jacobian_grid_sizes.clone().unwrap_or(vec![1, 2, 4])
    }

    pub fn jacobian_distances(&self) -> Vec<f64> {
        self.jacobian_distances
            .clone()
            .unwrap_or(vec![0.05, 0.1, 0.5])
    }

    /// Merge shipped defaults with config overrides, rejecting unknown
    /// keys and verifying every key the experiment needs is present.
    pub fn resolve_tolerances(&self) -> Result<BTreeMap<String, f64>, ConfigError> {
        let defaults: ToleranceDefaults =
            serde_json::from_str(DEFAULT_TOLERANCES).expect("embedded defaults parse");
        let mut merged = defaults
            .experiments
            .get(self.experiment.token())
            .cloned()
            .unwrap_or_default();
        let known = self.experiment.tolerance_keys();
        for (key, value) in &self.tolerances {
            if !known.contains(&key.as_str()) {
                return Err(ConfigError::UnknownTolerance {
                    key: key.clone(),
                    experiment: self.experiment.token().to_string(),
                });
            }
            merged.insert(key.clone(), *value);
        }
        for key in known {
            if !merged.contains_key(*key) {
                return Err(ConfigError::MissingTolerance {
                    key: key.to_string(),
                    experiment: self.experiment.token().to_string(),
                });
            }
        }
        Ok(merged)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.mode_grid()?;
        if self.trials == 0 {
            return Err(ConfigError::InvalidField {
                field: "trials",
                reason: "must be at least 1".into(),
            });
        }
        if !(self.p0.is_finite() && self.p0 >= 0.0) {
            return Err(ConfigError::InvalidField {
                field: "p0",
                reason: format!("must be nonnegative and finite, got {}", self.p0),
            });
        }
        self.channel_params()
            .validate()
            .map_err(|e| ConfigError::InvalidField {
                field: "channel",
                reason: e.to_string(),
            })?;
        self.resolve_tolerances()?;

        match self.experiment {
            Experiment::MiBoundSweep => {
                let points = match (&self.snr_values, &self.z_values) {
                    (Some(_), Some(_)) => {
                        return Err(ConfigError::InvalidField {
                            field: "snr_values",
                            reason: "give either snr_values or z_values, not both".into(),
                        })
                    }
                    (Some(s), None) => s.len(),
                    (None, Some(z)) => z.len(),
                    (None, None) => {
                        return Err(ConfigError::InvalidField {
                            field: "snr_values",
                            reason: "a sweep needs snr_values or z_values".into(),
                        })
                    }
                };
                if points < 2 {
                    return Err(ConfigError::InvalidField {
                        field: "snr_values",
                        reason: format!("a sweep needs at least 2 points, got {points}"),
                    });
                }
            }
            Experiment::ConditionalEntropyBound => {
                if self.input_points() == 0 || self.trials_per_point() == 0 {
                    return Err(ConfigError::InvalidField {
                        field: "input_points",
                        reason: "input_points and trials_per_point must be at least 1".into(),
                    });
                }
            }
            Experiment::VolumePreservation => {
                if self.jacobian_grid_sizes().is_empty() || self.jacobian_distances().is_empty() {
                    return Err(ConfigError::InvalidField {
                        field: "jacobian_grid_sizes",
                        reason: "need at least one grid size and one distance".into(),
                    });
                }
            }
            _ => {}
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(experiment: &str) -> String {
        format!(
            r#"{{
              "experiment": "{experiment}",
              "grid": {{"n": 4, "omega0": 0.5}},
              "channel": {{"sigma0_sq": 0.5, "z_total": 0.2, "dz": 0.01,
                           "scheme": "split_step", "nonlinearity_on": true}},
              "p0": 1.0,
              "trials": 100,
              "master_seed": 7
            }}"#
        )
    }

    #[test]
    fn minimal_config_parses_and_validates() {
        let cfg = ExperimentConfig::from_json(&minimal("lemma1")).unwrap();
        cfg.validate().unwrap();
        let tol = cfg.resolve_tolerances().unwrap();
        assert_eq!(tol["stderr_multiplier"], 3.0);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = minimal("lemma1").replace("\"p0\": 1.0", "\"p0\": 1.0, \"bogus\": 3");
        let err = ExperimentConfig::from_json(&bad).unwrap_err();
        assert!(err.to_string().contains("bogus"), "{err}");
    }

    #[test]
    fn unknown_tolerance_key_is_rejected() {
        let bad = minimal("lemma1").replace(
            "\"master_seed\": 7",
            "\"master_seed\": 7, \"tolerances\": {\"not_a_key\": 1.0}",
        );
        let cfg = ExperimentConfig::from_json(&bad).unwrap();
        assert!(matches!(
            cfg.validate(),
            Err(ConfigError::UnknownTolerance { .. })
        ));
    }

    #[test]
    fn zero_trials_names_the_field() {
        let bad = minimal("lemma1").replace("\"trials\": 100", "\"trials\": 0");
        let cfg = ExperimentConfig::from_json(&bad).unwrap();
        let err = cfg.validate().unwrap_err();
        assert!(err.to_string().contains("trials"), "{err}");
    }

    #[test]
    fn sweep_requires_two_points() {
        let one_point = minimal("mi_bound_sweep").replace(
            "\"master_seed\": 7",
            "\"master_seed\": 7, \"snr_values\": [4.0]",
        );
        let cfg = ExperimentConfig::from_json(&one_point).unwrap();
        assert!(cfg.validate().is_err());

        let ok = minimal("mi_bound_sweep").replace(
            "\"master_seed\": 7",
            "\"master_seed\": 7, \"snr_values\": [1.0, 4.0]",
        );
        ExperimentConfig::from_json(&ok).unwrap().validate().unwrap();
    }

    #[test]
    fn embedded_defaults_cover_every_experiment() {
        for token in [
            "lemma1", "lemma2", "lemma3", "lemma4", "epi", "chain", "appendix",
            "mi_bound_sweep",
        ] {
            let cfg = ExperimentConfig::from_json(&minimal(token)).unwrap();
            if token == "mi_bound_sweep" {
                // needs sweep points; only the tolerance merge is under test
                cfg.resolve_tolerances().unwrap();
            } else {
                cfg.resolve_tolerances().unwrap();
            }
        }
    }
}
