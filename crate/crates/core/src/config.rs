//! Runtime configuration: group caps, tolerances, grid depths and pipeline scans.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::group::DEFAULT_ORDER_CAP;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub order_cap: usize,
    /// Relative tolerance for identity audits.
    pub tolerance: f64,
    /// Ternary depth for Bourgain systems; `None` picks it from the family.
    pub bourgain_depth: Option<usize>,
    pub dim_depth: usize,
    pub n_scan: usize,
    pub max_retries: usize,
    pub c: f64,
    pub k_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            order_cap: DEFAULT_ORDER_CAP,
            tolerance: crate::fourier::IDENTITY_TOLERANCE,
            bourgain_depth: None,
            dim_depth: 16,
            n_scan: 32,
            max_retries: 4,
            c: 1.0,
            k_cap: crate::spectrum::DEFAULT_K_CAP,
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}
