//! JSON instance and solution files.
//!
//! Numbers are strings so that every value stays exact: decimals such as
//! `"0.35"` or `"1e-3"` and fractions such as `"7/20"` are both accepted.

use std::fs;
use std::path::Path;

use greenpack_core::numeric::{format_exact, parse_rational};
use greenpack_core::{Instance, PackingStats, Problem, Rational};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{CliError, Result};

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub beta: String,
    #[serde(rename = "G")]
    pub green: String,
    #[serde(rename = "U", default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<String>,
    pub sizes: Vec<String>,
    /// Must be set for a file with no items.
    #[serde(default, skip_serializing_if = "is_false")]
    pub empty: bool,
}

fn number(field: impl Into<String>, value: &str) -> Result<Rational> {
    parse_rational(value).map_err(|e| CliError::Number {
        field: field.into(),
        value: value.to_string(),
        message: e.to_string(),
    })
}

impl InstanceFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }

    /// Writes `inst` with exact numbers, items in their original order.
    pub fn from_instance(inst: &Instance, name: Option<String>) -> Self {
        Self {
            name,
            beta: format_exact(inst.beta()),
            green: format_exact(inst.green()),
            budget: inst.budget().map(format_exact),
            sizes: inst.original_sizes().iter().map(format_exact).collect(),
            empty: inst.is_empty(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        if self.sizes.is_empty() && !self.empty {
            return Err(CliError::EmptyNotMarked);
        }
        let sizes = self
            .sizes
            .iter()
            .enumerate()
            .map(|(i, s)| number(format!("sizes[{i}]"), s))
            .collect::<Result<Vec<_>>>()?;
        let beta = number("beta", &self.beta)?;
        let green = number("G", &self.green)?;
        let budget = self.budget.as_deref().map(|u| number("U", u)).transpose()?;
        Ok(Instance::new(sizes, beta, green, budget)?)
    }

    /// SHA-256 over the exact parameters and sizes in original order; the
    /// name and the spelling of numbers do not matter.
    pub fn hash(&self) -> Result<String> {
        Ok(instance_hash(&self.to_instance()?))
    }
}

pub fn instance_hash(inst: &Instance) -> String {
    let mut canonical = format!("beta={}\nG={}\n", inst.beta(), inst.green());
    match inst.budget() {
        Some(u) => canonical.push_str(&format!("U={u}\n")),
        None => canonical.push_str("U=none\n"),
    }
    let sizes: Vec<String> = inst.original_sizes().iter().map(ToString::to_string).collect();
    canonical.push_str(&format!("sizes={}\n", sizes.join(",")));
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// The problem to solve: explicit choice, else CGBP exactly when a budget is given.
pub fn default_problem(inst: &Instance, explicit: Option<Problem>) -> Problem {
    explicit.unwrap_or(if inst.budget().is_some() { Problem::Cgbp } else { Problem::Gbp })
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SolveParamsRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub node_budget: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsRecord {
    pub bins_used: usize,
    pub large_item_bins: usize,
    pub heavy_bins: usize,
    pub light_bins: usize,
    pub energy: String,
    pub objective: String,
}

impl From<&PackingStats> for StatsRecord {
    fn from(s: &PackingStats) -> Self {
        Self {
            bins_used: s.bins_used,
            large_item_bins: s.large_item_bins,
            heavy_bins: s.heavy_bins,
            light_bins: s.light_bins,
            energy: format_exact(&s.energy),
            objective: format_exact(&s.objective),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub instance_hash: String,
    pub algo: String,
    pub problem: String,
    #[serde(default)]
    pub params: SolveParamsRecord,
    /// Item indices in the order of the instance file, starting at 0.
    pub bins: Vec<Vec<usize>>,
    pub stats: StatsRecord,
}

impl SolutionFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.into(), source })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_json(path, self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serializes") + "\n"
    }
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).expect("plain data serializes") + "\n";
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Io { path: dir.into(), source })?;
    }
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}
