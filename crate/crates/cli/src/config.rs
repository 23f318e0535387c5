use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

/// Optional TOML defaults; every key mirrors a command-line flag and the
/// flag wins when both are given.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub ell: Option<u64>,
    pub n: Option<usize>,
    pub k: Option<u64>,
    pub format: Option<String>,
    pub output: Option<PathBuf>,
    pub precision: Option<u32>,
    pub profile: Option<String>,
    pub golden_dir: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c: FileConfig = toml::from_str("ell = 5\nn = 20\nformat = \"json\"\ngolden-dir = \"g\"").unwrap();
        assert_eq!(c.ell, Some(5));
        assert_eq!(c.n, Some(20));
        assert_eq!(c.format.as_deref(), Some("json"));
        assert_eq!(c.golden_dir, Some(PathBuf::from("g")));
        assert!(toml::from_str::<FileConfig>("colour = 1").is_err());
    }
}
