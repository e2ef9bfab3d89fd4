//! Experiment configuration: JSON file plus flag overrides, validated
//! before anything runs.

use serde::{Deserialize, Serialize};

use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SettingKind {
    Slice,
    Monogenic,
    SupershiftSlice,
    SupershiftMonogenic,
}

impl SettingKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SettingKind::Slice => "slice",
            SettingKind::Monogenic => "monogenic",
            SettingKind::SupershiftSlice => "supershift-slice",
            SettingKind::SupershiftMonogenic => "supershift-monogenic",
        }
    }
}

impl std::str::FromStr for SettingKind {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "slice" => Ok(SettingKind::Slice),
            "monogenic" => Ok(SettingKind::Monogenic),
            "supershift-slice" => Ok(SettingKind::SupershiftSlice),
            "supershift-monogenic" => Ok(SettingKind::SupershiftMonogenic),
            other => Err(HarnessError::InvalidConfig {
                field: "setting".into(),
                reason: format!("unknown setting `{other}`"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    Exp,
    TaylorFile,
}

impl Default for TargetKind {
    fn default() -> Self {
        TargetKind::Exp
    }
}

/// Frequency profile source: a named builtin or a JSON file with one Taylor
/// coefficient row per component g_0 ... g_n.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProfileSource {
    Named(String),
    Rows(Vec<Vec<f64>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: usize,
    pub a: f64,
    #[serde(rename = "Ns")]
    pub ns: Vec<usize>,
    pub setting: SettingKind,
    #[serde(default = "default_radius")]
    pub radius: f64,
    #[serde(default = "default_grid")]
    pub grid: usize,
    #[serde(default)]
    pub sigma: Option<f64>,
    #[serde(default)]
    pub target: TargetKind,
    #[serde(default)]
    pub taylor_file: Option<String>,
    #[serde(default)]
    pub profile: Option<ProfileSource>,
    #[serde(rename = "K", default)]
    pub trunc: Option<u32>,
    #[serde(default)]
    pub seed: u64,
}

fn default_radius() -> f64 {
    1.0
}

fn default_grid() -> usize {
    128
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), HarnessError> {
        let invalid = |field: &str, reason: String| HarnessError::InvalidConfig {
            field: field.into(),
            reason,
        };
        if self.n < 1 || self.n > 8 {
            return Err(invalid("n", format!("{} outside 1..=8", self.n)));
        }
        if self.ns.is_empty() {
            return Err(invalid("Ns", "empty".into()));
        }
        if !self.ns.windows(2).all(|w| w[0] < w[1]) {
            return Err(invalid("Ns", "must be strictly increasing".into()));
        }
        if self.ns[0] == 0 {
            return Err(invalid("Ns", "N must be >= 1".into()));
        }
        if !(self.radius > 0.0) {
            return Err(invalid("radius", format!("{} not > 0", self.radius)));
        }
        if let Some(s) = self.sigma {
            if !(s > 0.0) {
                return Err(invalid("sigma", format!("{s} not > 0")));
            }
        }
        if self.grid == 0 {
            return Err(invalid("grid", "need at least one grid point".into()));
        }
        if let Some(k) = self.trunc {
            if k > 30 {
                return Err(invalid("K", format!("{k} exceeds 30")));
            }
        }
        if self.target == TargetKind::TaylorFile && self.taylor_file.is_none() {
            return Err(invalid("taylor_file", "required for target taylor-file".into()));
        }
        Ok(())
    }

    /// sigma for the weighted-norm column: explicit value or the setting's
    /// bound exponent plus margin.
    pub fn effective_sigma(&self) -> f64 {
        self.sigma.unwrap_or(match self.setting {
            SettingKind::Slice | SettingKind::SupershiftSlice => {
                cliffosc::superosc::sigma_slice(self.a)
            }
            SettingKind::Monogenic | SettingKind::SupershiftMonogenic => {
                cliffosc::superosc::sigma_monogenic(self.n, self.a)
            }
        })
    }

    /// Monogenic truncation degree: explicit K, else the smallest K whose
    /// tail bound (n alpha R)^{K+1}/(K+1)! drops under 1e-10, capped at 30.
    pub fn effective_trunc(&self) -> u32 {
        if let Some(k) = self.trunc {
            return k;
        }
        let alpha = self.a.abs().max(1.0);
        for k in 4..=30 {
            if cliffosc::ck::monogenic_exp_tail(self.n, alpha, self.radius, k) < 1e-10 {
                return k;
            }
        }
        30
    }
}
