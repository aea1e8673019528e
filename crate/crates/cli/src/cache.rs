//! On-disk cache of command output, keyed by a hash of the command, its
//! arguments and the crate version.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "KANTOR_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cached {
    pub code: i32,
    pub stdout: String,
}

#[derive(Clone, Debug)]
pub struct ResultCache {
    dir: PathBuf,
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ResultCache { dir: dir.into() }
    }

    /// The cache named by `KANTOR_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(canonical_args: &str) -> String {
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION").as_bytes());
        h.update([0]);
        h.update(canonical_args.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.out"))
    }

    /// First line is the exit code, the rest is stdout verbatim.
    pub fn get(&self, key: &str) -> Option<Cached> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let (code, stdout) = text.split_once('\n')?;
        Some(Cached { code: code.parse().ok()?, stdout: stdout.to_string() })
    }

    pub fn put(&self, key: &str, value: &Cached) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        // write then rename so readers never see a partial entry
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, format!("{}\n{}", value.code, value.stdout))?;
        fs::rename(tmp, self.path(key))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::new(dir.path().join("nested"));
        let k = ResultCache::key("classify E6");
        assert!(cache.get(&k).is_none());
        let v = Cached { code: 1, stdout: "a\nb\n".into() };
        cache.put(&k, &v).unwrap();
        assert_eq!(cache.get(&k), Some(v));
    }

    #[test]
    fn keys_separate_arguments() {
        assert_ne!(ResultCache::key("classify E6"), ResultCache::key("classify E7"));
        assert_eq!(ResultCache::key("x").len(), 64);
    }
}
