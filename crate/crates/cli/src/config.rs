use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use ulam_lab::group::GroupDescriptor;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Tolerances used by the asserted inequalities; all must be positive.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    /// Allowed negative eigenvalue of a Gram block.
    pub psd: f64,
    /// Hull membership distance.
    pub membership: f64,
    /// Slack below one for free-group defects.
    pub defect: f64,
    /// Rounding slack on the box bound for lattice defects.
    pub bound: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { psd: 1e-9, membership: 1e-7, defect: 1e-9, bound: 1e-12 }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExploreConfig {
    pub radius: usize,
    pub dim: usize,
    pub noise: f64,
    pub trials: usize,
}

/// Experiment settings from `--config`; command-line flags take precedence.
/// Fields a subcommand does not use are ignored by it.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupDescriptor>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radii: Option<Vec<usize>>,
    /// Largest number of vectors per random tuple.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    /// Random measures in the defect sweep.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep_radius: Option<usize>,
    /// Ball on which the decomposition axioms are checked.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_radius: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explore: Option<ExploreConfig>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let t = &self.tolerances;
        for (name, v) in [("psd", t.psd), ("membership", t.membership), ("defect", t.defect), ("bound", t.bound)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!("tolerance {name} must be positive, got {v}")));
            }
        }
        if let Some(eps) = self.eps {
            if !(0.0..1.0).contains(&eps) {
                return Err(CliError::Usage(format!("eps must lie in [0, 1), got {eps}")));
            }
        }
        Ok(())
    }

    pub fn require_seed(&self) -> Result<u64, CliError> {
        self.seed.ok_or_else(|| CliError::Usage("a seed is required (--seed or \"seed\" in the config)".into()))
    }
}
