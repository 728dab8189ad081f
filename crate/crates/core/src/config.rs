//! Run configuration, read from `key = value` text.
//!
//! ```text
//! # comments and blank lines are ignored
//! max_number = 99
//! orthography = paper
//! max_leaves = 5
//! chart_cap = 100000
//! ```

use std::str::FromStr;

use thiserror::Error;

use crate::learner::LearnerConfig;
use crate::teacher::{Orthography, Teacher, MAX_NUMBER};
use crate::transducer::{EnumerateConfig, DEFAULT_CHART_CAP, DEFAULT_MAX_LEAVES};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub max_number: u64,
    pub orthography: Orthography,
    pub max_leaves: usize,
    pub chart_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            max_number: MAX_NUMBER,
            orthography: Orthography::Paper,
            max_leaves: DEFAULT_MAX_LEAVES,
            chart_cap: DEFAULT_CHART_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value `{value}` for `{key}`")]
    BadValue { line: usize, key: String, value: String },
    #[error("{0}")]
    Invalid(String),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(1..=MAX_NUMBER).contains(&self.max_number) {
            return Err(ConfigError::Invalid(format!("max_number must be in 1..={MAX_NUMBER}")));
        }
        if self.max_leaves == 0 || self.chart_cap == 0 {
            return Err(ConfigError::Invalid("max_leaves and chart_cap must be positive".into()));
        }
        Ok(())
    }

    pub fn enumerate(&self) -> EnumerateConfig {
        EnumerateConfig { max_leaves: self.max_leaves, chart_cap: self.chart_cap }
    }

    pub fn learner(&self) -> LearnerConfig {
        LearnerConfig { enumerate: self.enumerate(), ..LearnerConfig::default() }
    }

    pub fn teacher(&self) -> Teacher {
        Teacher::new(self.orthography)
    }
}

impl FromStr for RunConfig {
    type Err = ConfigError;

    fn from_str(text: &str) -> Result<RunConfig, ConfigError> {
        let mut cfg = RunConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || ConfigError::BadValue { line: i + 1, key: key.into(), value: value.into() };
            match key {
                "max_number" => cfg.max_number = value.parse().map_err(|_| bad())?,
                "orthography" => cfg.orthography = value.parse().map_err(|_| bad())?,
                "max_leaves" => cfg.max_leaves = value.parse().map_err(|_| bad())?,
                "chart_cap" => cfg.chart_cap = value.parse().map_err(|_| bad())?,
                _ => return Err(ConfigError::UnknownKey { line: i + 1, key: key.into() }),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}
