//! Optional `key = value` file of default tolerances, e.g. `ybe.tol = 1e-12`.

use std::collections::HashMap;
use std::path::Path;

pub const KNOWN: [&str; 12] = [
    "ybe", "rll", "rtt", "unitarity", "crossing", "casimir", "defect-spectrum", "use1", "use2", "bae", "diagonalize", "amp",
];

#[derive(Debug, Clone, Default)]
pub struct Config {
    tol: HashMap<String, f64>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, String> {
        let mut tol = HashMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key = value, got {raw:?}", no + 1))?;
            let key = key.trim();
            let name = key
                .strip_suffix(".tol")
                .filter(|n| KNOWN.contains(n))
                .ok_or_else(|| format!("line {}: unknown key {key:?}", no + 1))?;
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| format!("line {}: {key} needs a number, got {:?}", no + 1, value.trim()))?;
            if !(v > 0.0) {
                return Err(format!("line {}: {key} must be positive", no + 1));
            }
            tol.insert(name.to_string(), v);
        }
        Ok(Config { tol })
    }

    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::parse(&text)
    }

    pub fn tol(&self, name: &str) -> Option<f64> {
        self.tol.get(name).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_rejects() {
        let c = Config::parse("# defaults\nybe.tol = 1e-13\n\nuse2.tol=1e-7 # looser\n").unwrap();
        assert_eq!(c.tol("ybe"), Some(1e-13));
        assert_eq!(c.tol("use2"), Some(1e-7));
        assert_eq!(c.tol("rll"), None);
        assert!(Config::parse("ybe = 1").is_err());
        assert!(Config::parse("foo.tol = 1").is_err());
        assert!(Config::parse("ybe.tol = x").is_err());
        assert!(Config::parse("ybe.tol = -1").is_err());
    }
}
