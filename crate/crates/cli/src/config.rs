//! Optional `qubitfit.conf`: same `key=value` syntax as parameter files.
//! Precedence is command-line flag, then config file, then built-in default.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use qubitfit_core::params_file::{parse_entries, Entry};

pub const DEFAULT_FILE: &str = "qubitfit.conf";
pub const SEED_ENV: &str = "QUBITFIT_SEED";
pub const DEFAULT_SEED: u64 = 42;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct FileConfig {
    pub target: Option<String>,
    pub n: Option<usize>,
    pub x0: Option<f64>,
    pub iterations: Option<usize>,
    pub restarts: Option<usize>,
    pub seed: Option<u64>,
    pub sigma0: Option<f64>,
    pub sigma_shrink: Option<f64>,
    pub fail_streak: Option<usize>,
    pub out: Option<PathBuf>,
}

fn integer<T: std::str::FromStr>(e: &Entry) -> Result<T> {
    e.value.parse().ok().with_context(|| {
        format!(
            "line {}: `{}` expects an integer, got `{}`",
            e.line, e.key, e.value
        )
    })
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = FileConfig::default();
        for e in parse_entries(text)? {
            match e.key.as_str() {
                "target" => cfg.target = Some(e.value.clone()),
                "n" => cfg.n = Some(integer(&e)?),
                "x0" => cfg.x0 = Some(e.float()?),
                "iterations" => cfg.iterations = Some(integer(&e)?),
                "restarts" => cfg.restarts = Some(integer(&e)?),
                "seed" => cfg.seed = Some(integer(&e)?),
                "sigma0" => cfg.sigma0 = Some(e.float()?),
                "sigma_shrink" => cfg.sigma_shrink = Some(e.float()?),
                "fail_streak" => cfg.fail_streak = Some(integer(&e)?),
                "out" => cfg.out = Some(PathBuf::from(&e.value)),
                other => bail!("line {}: unknown config key `{other}`", e.line),
            }
        }
        Ok(cfg)
    }

    /// Reads `explicit` if given, else `qubitfit.conf` in the working
    /// directory when present.
    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        let path = match explicit {
            Some(p) => p.to_path_buf(),
            None => {
                let p = PathBuf::from(DEFAULT_FILE);
                if !p.exists() {
                    return Ok(Self::default());
                }
                p
            }
        };
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("in config {}", path.display()))
    }
}

/// `--seed`, then config, then `$QUBITFIT_SEED`, then 42.
pub fn resolve_seed(flag: Option<u64>, file: Option<u64>) -> Result<u64> {
    if let Some(s) = flag.or(file) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{SEED_ENV} must be an unsigned integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}
