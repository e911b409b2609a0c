use std::path::{Path, PathBuf};

use chc_core::evaluation::{parse_seconds, Budget, ConflictPolicy};
use num_rational::BigRational;

use crate::Failure;

/// Settings read from the `--config` file. Relative paths are resolved
/// against the file's directory.
#[derive(Debug, Default)]
pub struct Config {
    pub seed: Option<u64>,
    pub quotas: Option<PathBuf>,
    pub out_dir: Option<PathBuf>,
    pub cpu_budget: Option<BigRational>,
    pub wall_budget: Option<BigRational>,
    pub memory_gb: Option<u32>,
    pub policy: Option<ConflictPolicy>,
    pub hors_concours: Vec<String>,
}

fn seconds(key: &str, v: &toml::Value) -> Result<BigRational, String> {
    let text = match v {
        toml::Value::Integer(i) => i.to_string(),
        toml::Value::Float(f) => f.to_string(),
        toml::Value::String(s) => s.clone(),
        _ => return Err(format!("{key} must be a number of seconds")),
    };
    parse_seconds(&text).map_err(|e| format!("{key}: {e}"))
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Config::parse(&text, path.parent().unwrap_or(Path::new(".")))
            .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
    }

    pub fn parse(text: &str, base: &Path) -> Result<Config, String> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| e.message().to_string())?;
        let mut c = Config::default();
        let path = |key: &str, v: &toml::Value| -> Result<PathBuf, String> {
            let s = v.as_str().ok_or(format!("{key} must be a string"))?;
            Ok(base.join(s))
        };
        for (key, v) in &table {
            match key.as_str() {
                "seed" => {
                    let n = v.as_integer().filter(|n| *n >= 0).ok_or("seed must be a non-negative integer")?;
                    c.seed = Some(n as u64);
                }
                "quotas" => c.quotas = Some(path(key, v)?),
                "out_dir" => c.out_dir = Some(path(key, v)?),
                "cpu_budget" => c.cpu_budget = Some(seconds(key, v)?),
                "wall_budget" => c.wall_budget = Some(seconds(key, v)?),
                "memory_gb" => {
                    let n = v.as_integer().and_then(|n| u32::try_from(n).ok()).ok_or("memory_gb must be a non-negative integer")?;
                    c.memory_gb = Some(n);
                }
                "conflict_policy" => {
                    let s = v.as_str().ok_or("conflict_policy must be a string")?;
                    c.policy = Some(s.parse()?);
                }
                "hors_concours" => {
                    let arr = v.as_array().ok_or("hors_concours must be a list of solver names")?;
                    c.hors_concours = arr
                        .iter()
                        .map(|s| s.as_str().map(str::to_string).ok_or("hors_concours must be a list of solver names"))
                        .collect::<Result<_, _>>()?;
                }
                other => return Err(format!("unknown key {other}")),
            }
        }
        Ok(c)
    }

    pub fn budget(&self, cpu: Option<BigRational>, wall: Option<BigRational>, memory: Option<u32>) -> Budget {
        let d = Budget::default();
        Budget {
            cpu_seconds: cpu.or_else(|| self.cpu_budget.clone()).unwrap_or(d.cpu_seconds),
            wall_seconds: wall.or_else(|| self.wall_budget.clone()).unwrap_or(d.wall_seconds),
            memory_gb: memory.or(self.memory_gb).unwrap_or(d.memory_gb),
        }
    }
}
