//! Disk cache for bracket polynomials, one JSON file per `(family, k)`.
//!
//! Writes go to a unique temporary file in the same directory followed by a
//! rename, so readers never observe partial files.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jordan::Family;
use crate::symbolic::BracketPolynomial;

pub const FORMAT_VERSION: u32 = 1;

/// Environment variable overriding the cache directory; the value `off`
/// disables the disk cache.
pub const CACHE_ENV: &str = "RC_LAB_CACHE_DIR";

#[derive(Clone, Debug, PartialEq)]
pub struct Cache {
    dir: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CacheEntry {
    pub file: String,
    pub algebra: String,
    pub k: u32,
    pub terms: usize,
    pub bytes: u64,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache {
            dir: Some(dir.into()),
        }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn from_env() -> Self {
        match std::env::var(CACHE_ENV) {
            Ok(v) if v == "off" => Cache::disabled(),
            Ok(v) if !v.is_empty() => Cache::at(v),
            _ => Cache::at(std::env::temp_dir().join("rc-lab-cache")),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn file_name(family: Family, k: u32) -> String {
        format!("c-v{FORMAT_VERSION}-{}-k{k}.json", family.name())
    }

    /// Cached polynomial, or `None` when absent, unreadable or stale.
    pub fn load(&self, family: Family, k: u32) -> Option<BracketPolynomial> {
        let path = self.dir.as_ref()?.join(Self::file_name(family, k));
        let text = std::fs::read_to_string(path).ok()?;
        let value: serde_json::Value = serde_json::from_str(&text).ok()?;
        let c = BracketPolynomial::from_json(&value).ok()?;
        (c.family == family && c.k == k && c.is_homogeneous()).then_some(c)
    }

    pub fn store(&self, c: &BracketPolynomial) -> Result<()> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        std::fs::create_dir_all(dir)?;
        let target = dir.join(Self::file_name(c.family, c.k));
        let tmp = dir.join(format!(
            ".{}.{}.{}.tmp",
            Self::file_name(c.family, c.k),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        std::fs::write(&tmp, serde_json::to_string(&c.to_json())?)?;
        std::fs::rename(&tmp, &target).map_err(|e| {
            let _ = std::fs::remove_file(&tmp);
            Error::from(e)
        })
    }

    pub fn inspect(&self) -> Result<Vec<CacheEntry>> {
        let Some(dir) = &self.dir else {
            return Ok(Vec::new());
        };
        if !dir.exists() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for entry in std::fs::read_dir(dir)? {
            let entry = entry?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if !name.starts_with("c-v") || !name.ends_with(".json") {
                continue;
            }
            let bytes = entry.metadata()?.len();
            let text = std::fs::read_to_string(entry.path())?;
            let parsed = serde_json::from_str(&text)
                .map_err(Error::from)
                .and_then(|v| BracketPolynomial::from_json(&v));
            if let Ok(c) = parsed {
                out.push(CacheEntry {
                    file: name,
                    algebra: c.family.name(),
                    k: c.k,
                    terms: c.poly.len(),
                    bytes,
                });
            }
        }
        out.sort_by(|a, b| a.file.cmp(&b.file));
        Ok(out)
    }

    /// Removes every cache file; returns how many were removed.
    pub fn clear(&self) -> Result<usize> {
        let Some(dir) = &self.dir else {
            return Ok(0);
        };
        if !dir.exists() {
            return Ok(0);
        }
        let mut n = 0;
        for entry in std::fs::read_dir(dir)? {
            let entry = entry?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if name.starts_with("c-v") || name.ends_with(".tmp") {
                std::fs::remove_file(entry.path())?;
                n += 1;
            }
        }
        Ok(n)
    }
}
