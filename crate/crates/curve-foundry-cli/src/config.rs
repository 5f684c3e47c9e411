//! `key = value` config files. Flags win over the file, the file wins over
//! built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;

pub const ENV_VAR: &str = "CURVE_FOUNDRY_CONFIG";

const KNOWN: &[&str] = &[
    "budget",
    "sparse_terms",
    "jobs",
    "seed",
    "format",
    "challenges",
    "y_bound",
    "retries",
    "primality_rounds",
];

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, String> {
        let mut values = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key = value", no + 1))?;
            let k = k.trim().replace('-', "_");
            if !KNOWN.contains(&k.as_str()) {
                return Err(format!("config line {}: unknown key {k:?}", no + 1));
            }
            values.insert(k, v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("reading {}: {e}", path.display()))?;
        Config::parse(&text)
    }

    /// Explicit path, else the environment variable, else empty.
    pub fn discover(explicit: Option<&Path>) -> Result<Config, String> {
        match explicit {
            Some(p) => Config::load(p),
            None => match std::env::var_os(ENV_VAR) {
                Some(p) if !p.is_empty() => Config::load(Path::new(&p)),
                _ => Ok(Config::default()),
            },
        }
    }

    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| format!("config: bad value {v:?} for {key}")),
        }
    }

    /// Flag, then file, then `default`.
    pub fn pick<T: std::str::FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, String> {
        if let Some(v) = flag {
            return Ok(v);
        }
        Ok(self.get(key)?.unwrap_or(default))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_precedence() {
        let c = Config::parse("# budgets\nbudget = 500\nsparse-terms=4 # inline\n\n").unwrap();
        assert_eq!(c.get::<u64>("budget").unwrap(), Some(500));
        assert_eq!(c.pick(None, "sparse_terms", 3u32).unwrap(), 4);
        assert_eq!(c.pick(Some(9), "sparse_terms", 3u32).unwrap(), 9);
        assert_eq!(c.pick(None, "jobs", 1usize).unwrap(), 1);
        assert!(Config::parse("nonsense").is_err());
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("budget = many").unwrap().get::<u64>("budget").is_err());
    }
}
