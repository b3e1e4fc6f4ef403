//! Optional key=value config files mirroring the long flag names.
//! Flags always win over config values.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn empty() -> Self {
        Config::default()
    }

    /// Loads `key=value` lines; `#` starts a comment.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                bail!(
                    "config {} line {}: expected key=value",
                    path.display(),
                    idx + 1
                );
            };
            values.insert(key.trim().to_string(), value.trim().to_string());
        }
        Ok(Config { values })
    }

    /// Flag value if present, else the config value, else the default.
    pub fn resolve<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        Ok(self.resolve_opt(flag, key)?.unwrap_or(default))
    }

    /// Flag value if present, else the config value, else `None`.
    pub fn resolve_opt<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => match raw.parse::<T>() {
                Ok(v) => Ok(Some(v)),
                Err(e) => bail!("config key '{key}': invalid value '{raw}' ({e})"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn flags_win_over_config() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "# comment\np = 0.3\nseed=99\n").unwrap();
        let cfg = Config::load(file.path()).unwrap();
        assert_eq!(cfg.resolve(Some(0.7f64), "p", 0.2).unwrap(), 0.7);
        assert_eq!(cfg.resolve(None::<f64>, "p", 0.2).unwrap(), 0.3);
        assert_eq!(cfg.resolve(None::<u64>, "seed", 1).unwrap(), 99);
        assert_eq!(cfg.resolve(None::<u64>, "missing", 5).unwrap(), 5);
    }

    #[test]
    fn malformed_lines_rejected() {
        let mut file = tempfile::NamedTempFile::new().unwrap();
        writeln!(file, "just words").unwrap();
        assert!(Config::load(file.path()).is_err());
    }
}
