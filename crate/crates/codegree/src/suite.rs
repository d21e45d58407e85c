//! `key = value` campaign configs.
//!
//! ```text
//! suite = quick
//! budget_nodes = 100000000
//! budget_pairs = 10000000
//! budget_families = 10000000
//! ```
//!
//! `suite = quick` runs every acceptance check on its pinned grid;
//! `suite = custom` runs exactly the `checks` list. Budgets are required.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::campaign::{Campaign, Check};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub name: String,
    pub checks: Vec<Check>,
    pub campaign: Campaign,
    pub output: Option<PathBuf>,
}

const REQUIRED: [&str; 4] = ["suite", "budget_nodes", "budget_pairs", "budget_families"];

pub fn parse_suite(text: &str) -> Result<SuiteConfig, ConfigError> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    let mut last = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError { line, message: format!("expected `key = value`, found `{content}`") });
        };
        let key = key.trim().to_owned();
        if let Some((first, _)) = entries.get(&key) {
            return Err(ConfigError { line, message: format!("`{key}` already set on line {first}") });
        }
        entries.insert(key, (line, value.trim().to_owned()));
    }
    for key in REQUIRED {
        if !entries.contains_key(key) {
            return Err(ConfigError { line: last.max(1), message: format!("missing required key `{key}`") });
        }
    }

    let mut campaign = Campaign::default();
    let mut checks = None;
    let mut output = None;
    let mut name = String::new();
    for (key, (line, value)) in &entries {
        let line = *line;
        let num = || -> Result<u64, ConfigError> {
            value.parse().map_err(|_| ConfigError { line, message: format!("`{key}` needs an integer, found `{value}`") })
        };
        let small = || -> Result<u32, ConfigError> {
            u32::try_from(num()?).map_err(|_| ConfigError { line, message: format!("`{key}` is too large") })
        };
        let g = &mut campaign.grid;
        match key.as_str() {
            "suite" => name = value.clone(),
            "checks" => {
                let mut list = Vec::new();
                for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let check = Check::from_name(item)
                        .ok_or_else(|| ConfigError { line, message: format!("unknown check `{item}`") })?;
                    list.push(check);
                }
                checks = Some(list);
            }
            "output" => output = Some(PathBuf::from(value)),
            "seed" => campaign.seed = num()?,
            "budget_nodes" => campaign.budgets.nodes = num()?,
            "budget_pairs" => campaign.budgets.pairs = num()?,
            "budget_families" => campaign.budgets.families = num()?,
            "max_k" => g.max_k = small()?,
            "max_t" => g.max_t = small()?,
            "max_r" => g.max_r = small()?,
            "nobad_max_n" => g.nobad_max_n = small()?,
            "low_rank_max_k" => g.low_rank_max_k = small()?,
            "low_rank_max_t" => g.low_rank_max_t = small()?,
            "low_rank_max_n" => g.low_rank_max_n = small()?,
            "sunflower_max_r" => g.sunflower_max_r = small()?,
            "sunflower_max_p" => g.sunflower_max_p = small()?,
            "sunflower_n" => g.sunflower_n = small()?,
            "sunflower_samples" => g.sunflower_samples = small()?,
            "kk_max_k" => g.kk_max_k = small()?,
            "kk_max_s" => g.kk_max_s = small()?,
            "kk_max_m" => g.kk_max_m = small()?,
            "oracle_cells" => g.oracle_cells = small()?,
            "oracle_max_universe" => g.oracle_max_universe = small()?,
            _ => return Err(ConfigError { line, message: format!("unknown key `{key}`") }),
        }
    }
    if campaign.grid.sunflower_n > 64 {
        let line = entries["sunflower_n"].0;
        return Err(ConfigError { line, message: "sunflower_n must be at most 64".into() });
    }

    let suite_line = entries["suite"].0;
    let checks = match (name.as_str(), checks) {
        ("quick", None) => Check::ALL.to_vec(),
        ("quick", Some(list)) | ("custom", Some(list)) => list,
        ("custom", None) => {
            return Err(ConfigError { line: suite_line, message: "custom suites need a `checks` list".into() })
        }
        (other, _) => {
            return Err(ConfigError { line: suite_line, message: format!("unknown suite `{other}` (quick or custom)") })
        }
    };
    Ok(SuiteConfig { name, checks, campaign, output })
}
