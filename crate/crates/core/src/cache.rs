//! Content-addressed on-disk cache for invariant bases and other slice results.
//!
//! Each entry is a file named by the SHA-256 of its key. The file starts with a
//! header line carrying the SHA-256 of the payload; an entry whose payload does
//! not match its header is reported and treated as absent.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use log::warn;
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};
use tempfile::NamedTempFile;

use crate::error::{Error, Result};
use crate::koszul::{KoszulElement, SerializedElement};
use crate::mui::{invariant_basis, GroupSpec};

/// Bumped whenever a cached computation changes its output.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+slices.1");

const HEADER: &str = "sha256:";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheKey {
    pub module: String,
    pub selector: String,
    pub n: usize,
    pub p: u32,
    pub degree: usize,
    pub version: String,
}

impl CacheKey {
    pub fn new(module: &str, selector: &str, n: usize, p: u32, degree: usize) -> Self {
        Self {
            module: module.into(),
            selector: selector.into(),
            n,
            p,
            degree,
            version: CODE_VERSION.into(),
        }
    }

    pub fn digest(&self) -> String {
        let canonical = format!(
            "{}\u{1f}{}\u{1f}{}\u{1f}{}\u{1f}{}\u{1f}{}",
            self.module, self.selector, self.n, self.p, self.degree, self.version
        );
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)
            .map_err(|e| Error::Cache(format!("cannot create {}: {e}", dir.display())))?;
        let probe = NamedTempFile::new_in(&dir)
            .map_err(|e| Error::Cache(format!("{} is not writable: {e}", dir.display())))?;
        drop(probe);
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.entry", key.digest()))
    }

    pub fn get(&self, key: &CacheKey) -> Option<Vec<u8>> {
        let path = self.path(key);
        let raw = fs::read(&path).ok()?;
        let split = raw.iter().position(|&b| b == b'\n')?;
        let (head, payload) = (&raw[..split], &raw[split + 1..]);
        let stored = std::str::from_utf8(head).ok()?.strip_prefix(HEADER);
        let actual = hex::encode(Sha256::digest(payload));
        if stored != Some(actual.as_str()) {
            warn!("checksum mismatch in cache entry {}", path.display());
            return None;
        }
        Some(payload.to_vec())
    }

    /// Writes to a temporary file in the cache directory, then renames it into place.
    pub fn put(&self, key: &CacheKey, payload: &[u8]) -> Result<()> {
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", self.dir.display()));
        let mut tmp = NamedTempFile::new_in(&self.dir).map_err(io)?;
        let header = format!("{HEADER}{}\n", hex::encode(Sha256::digest(payload)));
        tmp.write_all(header.as_bytes()).map_err(io)?;
        tmp.write_all(payload).map_err(io)?;
        tmp.persist(self.path(key)).map_err(|e| io(e.error))?;
        Ok(())
    }

    pub fn get_json<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let bytes = self.get(key)?;
        match serde_json::from_slice(&bytes) {
            Ok(v) => Some(v),
            Err(e) => {
                warn!("undecodable cache entry {}: {e}", key.digest());
                None
            }
        }
    }

    pub fn put_json<T: Serialize>(&self, key: &CacheKey, value: &T) -> Result<()> {
        let bytes = serde_json::to_vec(value).map_err(|e| Error::Cache(e.to_string()))?;
        self.put(key, &bytes)
    }
}

/// [`invariant_basis`] through an optional cache.
pub fn cached_invariant_basis(
    cache: Option<&Cache>,
    h: &GroupSpec,
    d: usize,
) -> Result<Vec<KoszulElement>> {
    let Some(cache) = cache else {
        return invariant_basis(h, d);
    };
    let key = CacheKey::new("invariant_basis", &h.label, h.n, h.p, d);
    if let Some(stored) = cache.get_json::<Vec<SerializedElement>>(&key) {
        if let Ok(basis) = stored
            .iter()
            .map(KoszulElement::from_serialized)
            .collect::<Result<Vec<_>>>()
        {
            return Ok(basis);
        }
        warn!("discarding malformed cached basis {}", key.digest());
    }
    let basis = invariant_basis(h, d)?;
    let wire: Vec<SerializedElement> = basis.iter().map(|x| x.to_serialized()).collect();
    cache.put_json(&key, &wire)?;
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mui::{group_generators, GroupFamily};

    #[test]
    fn put_get_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = CacheKey::new("demo", "sl", 2, 3, 7);
        assert!(cache.get(&key).is_none());
        cache.put(&key, b"payload\nwith newline").unwrap();
        assert_eq!(cache.get(&key).unwrap(), b"payload\nwith newline");
    }

    #[test]
    fn version_change_misses() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = CacheKey::new("demo", "sl", 2, 3, 7);
        cache.put(&key, b"x").unwrap();
        let mut other = key.clone();
        other.version.push_str("-next");
        assert!(cache.get(&other).is_none());
    }

    #[test]
    fn corruption_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = CacheKey::new("demo", "sl", 2, 3, 7);
        cache.put(&key, b"abc").unwrap();
        let path = cache.path(&key);
        let mut raw = fs::read(&path).unwrap();
        *raw.last_mut().unwrap() = b'z';
        fs::write(&path, raw).unwrap();
        assert!(cache.get(&key).is_none());
    }

    #[test]
    fn cached_basis_matches_fresh() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let h = group_generators(GroupFamily::SL, 2, 3).unwrap();
        for d in [7, 8, 12] {
            let cold = cached_invariant_basis(Some(&cache), &h, d).unwrap();
            let warm = cached_invariant_basis(Some(&cache), &h, d).unwrap();
            assert_eq!(cold, warm);
            assert_eq!(cold, invariant_basis(&h, d).unwrap());
        }
    }
}
