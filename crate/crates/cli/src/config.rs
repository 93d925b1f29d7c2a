use serde::Serialize;
use std::path::Path;

/// Shared knobs for every check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckConfig {
    pub precision_bits: u32,
    /// Series order for truncated identities; each check has its own default.
    pub order: Option<usize>,
    /// Numeric tolerance is `2^tolerance_exp`.
    pub tolerance_exp: i32,
    pub orbit_bound: usize,
    pub search_depth: usize,
    pub jobs: usize,
    pub seed: u64,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            precision_bits: 256,
            order: None,
            tolerance_exp: -80,
            orbit_bound: 100_000,
            search_depth: 12,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            seed: 2024,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
    v.trim().parse().map_err(|_| format!("invalid value {v:?} for {key}"))
}

impl CheckConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        match key.trim().replace('_', "-").as_str() {
            "precision-bits" => self.precision_bits = parse(key, value)?,
            "order" => self.order = Some(parse(key, value)?),
            "tolerance-exp" => self.tolerance_exp = parse(key, value)?,
            "orbit-bound" => self.orbit_bound = parse(key, value)?,
            "search-depth" => self.search_depth = parse(key, value)?,
            "jobs" => self.jobs = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            other => return Err(format!("unknown config key {other:?}")),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), String> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| format!("line {}: expected key = value", n + 1))?;
            self.set(k, v).map_err(|e| format!("line {}: {e}", n + 1))?;
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<(), String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        self.apply_text(&text)
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.precision_bits < 64 {
            return Err("precision-bits must be at least 64".into());
        }
        if self.tolerance_exp >= 0 {
            return Err("tolerance-exp must be negative".into());
        }
        if self.order == Some(0) || self.orbit_bound == 0 || self.search_depth == 0 || self.jobs == 0 {
            return Err("order, orbit-bound, search-depth and jobs must be positive".into());
        }
        Ok(())
    }

    pub fn tolerance_log2(&self) -> f64 {
        self.tolerance_exp as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_overrides_defaults() {
        let mut c = CheckConfig::default();
        c.apply_text("# comment\nprecision_bits = 512\norbit-bound=10\n\n").unwrap();
        assert_eq!(c.precision_bits, 512);
        assert_eq!(c.orbit_bound, 10);
        assert!(c.apply_text("nonsense").is_err());
        assert!(c.apply_text("depth = 3").is_err());
        assert!(c.apply_text("jobs = x").is_err());
    }

    #[test]
    fn validation() {
        assert!(CheckConfig::default().validate().is_ok());
        let c = CheckConfig { tolerance_exp: 3, ..CheckConfig::default() };
        assert!(c.validate().is_err());
    }
}
