//! Scenario files: a JSON description of one run. Command-line flags override
//! any field given here.
//!
//! ```json
//! {
//!   "task": "bound",
//!   "ansatz": { "family": "gaussian", "offset": 0.5, "params": { "width": 1.0 } },
//!   "grid": { "L": 12.0, "n_points": 4801 },
//!   "options": { "side": "minus", "negate": true, "scale": 1.0 },
//!   "out": "spectrum.csv",
//!   "format": "csv"
//! }
//! ```
//!
//! A delta-array scenario replaces `ansatz` with
//! `"delta": [{ "position": -1.0, "strength": 2.0 }, ...]`.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use susy_hbs::delta_model::DeltaArray;
use susy_hbs::partner::Side;
use susy_hbs::HbsAnsatz;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Partner,
    Bound,
    Scatter,
    Area,
    Delta,
    Reproduce,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSettings {
    #[serde(rename = "L")]
    pub half_width: Option<f64>,
    pub n_points: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    pub side: Option<Side>,
    pub negate: Option<bool>,
    pub scale: Option<f64>,
    /// Bound-state window for `bound`, energy range for `scatter`.
    pub e_min: Option<f64>,
    pub e_max: Option<f64>,
    pub n_energies: Option<usize>,
    pub extend_domain: Option<bool>,
    pub u1: Option<f64>,
    pub a: Option<f64>,
    pub figure: Option<String>,
    #[serde(default)]
    pub only: Vec<String>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub task: Option<Task>,
    pub ansatz: Option<HbsAnsatz>,
    pub delta: Option<DeltaArray>,
    #[serde(default)]
    pub grid: GridSettings,
    #[serde(default)]
    pub options: Options,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Usage(format!("cannot read scenario {}: {e}", path.display()))
        })?;
        let s: Scenario = serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("invalid scenario {}: {e}", path.display())))?;
        if s.ansatz.is_some() && s.delta.is_some() {
            return Err(CliError::Usage(
                "scenario may give an ansatz or a delta array, not both".into(),
            ));
        }
        Ok(s)
    }
}
