//! Run configuration shared by the CLI and the suite runner.
//!
//! A config file holds `key = value` lines using the long flag names
//! (`p`, `n`, `family`, `case`, `max-deg`, `jobs`, `cache-dir`, `format`, `out`,
//! `heavy`). Blank lines and `#` comments are ignored. Values given on the
//! command line take precedence.

use std::path::PathBuf;

use serde_json::json;

use crate::bgmodel::case_ids;
use crate::error::{Error, Result};
use crate::mui::GroupFamily;
use crate::report::Format;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub p: Option<u32>,
    pub n: Option<usize>,
    pub family: Option<GroupFamily>,
    pub case: Option<String>,
    pub max_deg: Option<usize>,
    pub jobs: Option<usize>,
    pub cache_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    /// Opt in to the rank 6 and 7 Weyl computations.
    pub heavy: bool,
}

impl RunConfig {
    /// Parses a config file into a partial configuration.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let bad = || Error::Config(format!("bad value {value:?} for {key}"));
        match key.replace('_', "-").as_str() {
            "p" => self.p = Some(value.parse().map_err(|_| bad())?),
            "n" => self.n = Some(value.parse().map_err(|_| bad())?),
            "family" => self.family = Some(GroupFamily::parse(value).ok_or_else(bad)?),
            "case" => self.case = Some(value.to_string()),
            "max-deg" => self.max_deg = Some(value.parse().map_err(|_| bad())?),
            "jobs" => self.jobs = Some(value.parse().map_err(|_| bad())?),
            "cache-dir" => self.cache_dir = Some(value.into()),
            "format" => self.format = Some(Format::parse(value).ok_or_else(bad)?),
            "out" => self.out = Some(value.into()),
            "heavy" => self.heavy = value.parse().map_err(|_| bad())?,
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Fills every unset field of `self` from `base`.
    pub fn or(self, base: RunConfig) -> Self {
        Self {
            p: self.p.or(base.p),
            n: self.n.or(base.n),
            family: self.family.or(base.family),
            case: self.case.or(base.case),
            max_deg: self.max_deg.or(base.max_deg),
            jobs: self.jobs.or(base.jobs),
            cache_dir: self.cache_dir.or(base.cache_dir),
            format: self.format.or(base.format),
            out: self.out.or(base.out),
            heavy: self.heavy || base.heavy,
        }
    }

    pub fn output_format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }

    /// Rejects unknown selectors before any computation starts.
    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.p {
            if !matches!(p, 3 | 5 | 7) {
                return Err(Error::Config(format!(
                    "p = {p}: supported primes are 3, 5, 7"
                )));
            }
        }
        if let Some(n) = self.n {
            if !(1..=4).contains(&n) {
                return Err(Error::Config(format!("n = {n}: supported ranks are 1..=4")));
            }
        }
        if let Some(c) = &self.case {
            if !case_ids().contains(&c.as_str()) {
                return Err(Error::UnknownCase(c.clone()));
            }
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be positive".into()));
        }
        Ok(())
    }

    /// The parameters that determine a report's content. Parallelism, cache
    /// location and output destination are left out so that they cannot change it.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p,
            "n": self.n,
            "family": self.family.map(|f| f.tag()),
            "case": self.case,
            "max_deg": self.max_deg,
            "heavy": self.heavy,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_file() {
        let cfg =
            RunConfig::from_kv("# demo\np = 5\nmax_deg=30\nfamily = gnp\nformat = csv\n").unwrap();
        assert_eq!(cfg.p, Some(5));
        assert_eq!(cfg.max_deg, Some(30));
        assert_eq!(cfg.family, Some(GroupFamily::GPrime));
        assert_eq!(cfg.output_format(), Format::Csv);
    }

    #[test]
    fn flags_win() {
        let file = RunConfig::from_kv("p = 5\nn = 3").unwrap();
        let flags = RunConfig {
            p: Some(3),
            ..Default::default()
        };
        let merged = flags.or(file);
        assert_eq!((merged.p, merged.n), (Some(3), Some(3)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::from_kv("colour = red").is_err());
        assert!(RunConfig::from_kv("p five").is_err());
        let cfg = RunConfig {
            case: Some("g2".into()),
            ..Default::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::UnknownCase(_))));
    }
}
