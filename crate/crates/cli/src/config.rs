//! `--config` files: a flat TOML table whose keys are the long flag names.
//!
//! ```toml
//! jobs = 4
//! dim = 3
//! periods = [2, 3, 2]
//! T = [0, 1, 2, 3]
//! p = [1, 2, 3]   # or a single integer
//! ```

use serde::Deserialize;

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T: Clone> OneOrMany<T> {
    pub fn to_vec(&self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x.clone()],
            OneOrMany::Many(xs) => xs.clone(),
        }
    }
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub jobs: Option<usize>,
    pub p: Option<OneOrMany<u64>>,
    pub i: Option<OneOrMany<usize>>,
    pub dim: Option<usize>,
    pub k: Option<u64>,
    pub periods: Option<Vec<u64>>,
    #[serde(rename = "T")]
    pub t: Option<Vec<i64>>,
    pub shifts: Option<Vec<u64>>,
    pub max_i: Option<usize>,
    pub base: Option<String>,
    pub range: Option<String>,
}

impl Config {
    pub fn from_toml_str(s: &str) -> Result<Self, String> {
        toml::from_str(s).map_err(|e| e.message().to_string())
    }
}
