//! On-disk JSON cache keyed by a hash of what determines the value.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "MF_CACHE_DIR";

/// Fields that determine a cached value.
#[derive(Serialize)]
pub struct CacheKey<'a> {
    pub kind: &'a str,
    pub group_fingerprint: &'a str,
    pub p: u64,
    pub m: usize,
    pub precision: u32,
    pub degree_cap: u32,
}

impl CacheKey<'_> {
    fn file_name(&self) -> String {
        let json = serde_json::to_vec(self).expect("key serializes");
        format!("{}-{}.json", self.kind, hex::encode(Sha256::digest(json)))
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Self { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Self { dir: Some(dir.into()) }
    }

    /// Explicit directory, else `MF_CACHE_DIR`, else the user cache directory.
    pub fn resolve(explicit: Option<&Path>) -> Self {
        if let Some(dir) = explicit {
            return Self::at(dir);
        }
        if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()) {
            return Self::at(PathBuf::from(dir));
        }
        let base = std::env::var_os("XDG_CACHE_HOME")
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")));
        match base {
            Some(b) => Self::at(b.join("mixquiver")),
            None => Self::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    /// A missing, unreadable or stale entry is a miss.
    pub fn get<T: DeserializeOwned>(&self, key: &CacheKey) -> Option<T> {
        let path = self.dir.as_ref()?.join(key.file_name());
        let bytes = fs::read(path).ok()?;
        serde_json::from_slice(&bytes).ok()
    }

    /// Writes to a temporary file in the cache directory, then renames it into
    /// place. Failures are ignored: the cache is an optimization.
    pub fn put<T: Serialize>(&self, key: &CacheKey, value: &T) {
        let Some(dir) = &self.dir else { return };
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(dir)?;
            let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
            tmp.write_all(&serde_json::to_vec(value).map_err(std::io::Error::other)?)?;
            tmp.persist(dir.join(key.file_name())).map_err(|e| e.error)?;
            Ok(())
        };
        let _ = write();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(cap: u32) -> CacheKey<'static> {
        CacheKey { kind: "test", group_fingerprint: "abc", p: 7, m: 1, precision: 4, degree_cap: cap }
    }

    #[test]
    fn round_trip_and_key_separation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        assert_eq!(cache.get::<Vec<u32>>(&key(1)), None);
        cache.put(&key(1), &vec![1u32, 2, 3]);
        assert_eq!(cache.get::<Vec<u32>>(&key(1)), Some(vec![1, 2, 3]));
        assert_eq!(cache.get::<Vec<u32>>(&key(2)), None);
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
    }

    #[test]
    fn disabled_cache_never_hits() {
        let cache = Cache::disabled();
        cache.put(&key(1), &1u32);
        assert_eq!(cache.get::<u32>(&key(1)), None);
    }
}
