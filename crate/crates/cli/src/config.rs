//! Settings resolution: command-line flags, then `RECIP_*` environment
//! variables (both handled by clap), then the TOML config file, then the
//! built-in defaults.

use std::path::Path;

use recip_core::scan::{CIRCULANT_CAP, CYCLE_CAP};
use recip_core::Limits;
use serde::Deserialize;

use crate::error::CliError;

/// Keys accepted in the config file. All optional.
#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Overrides {
    pub max_n: Option<usize>,
    pub max_search_nodes: Option<u64>,
    pub max_group_elements: Option<usize>,
    pub jobs: Option<usize>,
    pub cycle_cap: Option<usize>,
    pub circulant_cap: Option<usize>,
}

impl Overrides {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text)
    }

    /// Fields of `self` win over those of `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            max_n: self.max_n.or(lower.max_n),
            max_search_nodes: self.max_search_nodes.or(lower.max_search_nodes),
            max_group_elements: self.max_group_elements.or(lower.max_group_elements),
            jobs: self.jobs.or(lower.jobs),
            cycle_cap: self.cycle_cap.or(lower.cycle_cap),
            circulant_cap: self.circulant_cap.or(lower.circulant_cap),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Settings {
    pub limits: Limits,
    /// Scan worker threads, 0 for one per logical core.
    pub jobs: usize,
    pub cycle_cap: usize,
    pub circulant_cap: usize,
}

impl Default for Settings {
    fn default() -> Self {
        Settings::resolve(Overrides::default())
    }
}

impl Settings {
    pub fn resolve(o: Overrides) -> Self {
        let d = Limits::default();
        Settings {
            limits: Limits {
                max_n: o.max_n.unwrap_or(d.max_n),
                max_search_nodes: o.max_search_nodes.unwrap_or(d.max_search_nodes),
                max_group_elements: o.max_group_elements.unwrap_or(d.max_group_elements),
            },
            jobs: o.jobs.unwrap_or(0),
            cycle_cap: o.cycle_cap.unwrap_or(CYCLE_CAP),
            circulant_cap: o.circulant_cap.unwrap_or(CIRCULANT_CAP),
        }
    }

    /// Warnings for caps raised above their defaults.
    pub fn cost_warnings(&self) -> Vec<String> {
        let d = Settings::resolve(Overrides::default());
        let mut out = Vec::new();
        if self.limits.max_n > d.limits.max_n {
            out.push(format!(
                "max_n raised to {}: adjugate cost grows roughly like n! in the number of colours",
                self.limits.max_n
            ));
        }
        if self.cycle_cap > d.cycle_cap {
            out.push(format!(
                "cycle scan cap raised to {}: the universe grows like Bell(n)^2 and n = 7 takes hours",
                self.cycle_cap
            ));
        }
        if self.circulant_cap > d.circulant_cap {
            out.push(format!(
                "circulant scan cap raised to {}: 2^(n/2) graphs, each with a symbolic adjugate",
                self.circulant_cap
            ));
        }
        out
    }
}
