//! Content-addressed result cache: one JSON file per `(operation, parameters)`
//! key, named by the SHA-256 of the key's canonical text.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{SystemTime, UNIX_EPOCH};

use fibwork_core::Polynomial;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub op: String,
    pub params: Vec<u64>,
}

impl CacheKey {
    pub fn new(op: &str, params: &[u64]) -> Self {
        CacheKey {
            op: op.to_string(),
            params: params.to_vec(),
        }
    }

    pub fn qfibonomial(m: usize, n: usize) -> Self {
        CacheKey::new("qfibonomial", &[m as u64, n as u64])
    }

    /// `op(p1,p2,...)`
    pub fn canonical(&self) -> String {
        let params: Vec<String> = self.params.iter().map(u64::to_string).collect();
        format!("{}({})", self.op, params.join(","))
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    pub polynomial: Polynomial,
    pub created_unix_ms: u64,
    pub generator: String,
}

impl CacheEntry {
    pub fn new(key: CacheKey, polynomial: Polynomial) -> Self {
        let created_unix_ms = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        CacheEntry {
            key,
            polynomial,
            created_unix_ms,
            generator: concat!("fibwork ", env!("CARGO_PKG_VERSION")).to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> CliResult<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    pub fn get(&self, key: &CacheKey) -> CliResult<Option<CacheEntry>> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(CliError::io(path, e)),
        };
        let entry: CacheEntry = serde_json::from_str(&text)
            .map_err(|e| CliError::io(&path, io::Error::new(io::ErrorKind::InvalidData, e)))?;
        if entry.key != *key {
            let msg = format!("entry holds {} instead of {}", entry.key.canonical(), key.canonical());
            return Err(CliError::io(path, io::Error::new(io::ErrorKind::InvalidData, msg)));
        }
        Ok(Some(entry))
    }

    /// Writes through a temporary file and a rename, so concurrent writers of
    /// the same key never expose a torn file.
    pub fn put(&self, entry: &CacheEntry) -> CliResult<PathBuf> {
        let path = self.path_for(&entry.key);
        let tmp = self.dir.join(format!(
            ".{}.{}.{}.tmp",
            entry.key.digest(),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let text = serde_json::to_string_pretty(entry).expect("cache entries serialize");
        fs::write(&tmp, text).map_err(|e| CliError::io(&tmp, e))?;
        fs::rename(&tmp, &path).map_err(|e| CliError::io(&path, e))?;
        Ok(path)
    }

    pub fn get_or_compute<F>(&self, key: &CacheKey, compute: F) -> CliResult<Polynomial>
    where
        F: FnOnce() -> CliResult<Polynomial>,
    {
        if let Some(entry) = self.get(key)? {
            return Ok(entry.polynomial);
        }
        let polynomial = compute()?;
        self.put(&CacheEntry::new(key.clone(), polynomial.clone()))?;
        Ok(polynomial)
    }
}

/// How a q-Fibonomial is computed on a cache miss.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    /// One long division by the full denominator, memoized in-process.
    #[default]
    Division,
    /// Neighbour ratios with linear-time divisions; not memoized.
    Ratios,
}

/// `qfibonomial(m, n)`, through the cache when one is configured. Both
/// routes produce the same polynomial, so they share cache keys.
pub fn cached_qfibonomial(cache: Option<&Cache>, route: Route, m: usize, n: usize) -> CliResult<Polynomial> {
    let compute = || match route {
        Route::Division => Ok(fibwork_core::qfibonomial(m, n)?.as_ref().clone()),
        Route::Ratios => Ok(fibwork_core::fibonomial::qfibonomial_by_ratios(m, n)?),
    };
    match cache {
        Some(c) => c.get_or_compute(&CacheKey::qfibonomial(m, n), compute),
        None => compute(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_text_and_digest() {
        let k = CacheKey::qfibonomial(3, 4);
        assert_eq!(k.canonical(), "qfibonomial(3,4)");
        assert_eq!(k.digest().len(), 64);
        assert_ne!(k.digest(), CacheKey::qfibonomial(4, 3).digest());
    }
}
