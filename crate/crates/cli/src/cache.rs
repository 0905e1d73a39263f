//! On-disk cache of colored invariants, one JSON file per
//! (braid, colors, conventions) triple.

use std::fs;
use std::io;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};

use lmov_core::exactring::RationalQT;
use lmov_core::partitions::VectorPartition;
use lmov_core::skein::{BraidWord, CONVENTION_TAG};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "LMOV_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache io: {0}")]
    Io(#[from] io::Error),
    #[error("corrupt cache entry {0}")]
    Corrupt(String),
}

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    braid: String,
    colors: String,
    value: RationalQT,
    /// sha256 of the serialized `value`.
    digest: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

/// `"<strands>:<word>"` after free reduction.
pub fn canonical_braid(b: &BraidWord) -> String {
    format!("{}:{}", b.strands(), b.free_reduce())
}

pub struct Cache {
    dir: PathBuf,
    version: String,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Cache> {
        Self::with_version(dir, CONVENTION_TAG)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: &str) -> io::Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir, version: version.to_string() })
    }

    /// The cache named by `LMOV_CACHE_DIR`, if set.
    pub fn from_env() -> io::Result<Option<Cache>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::new(d).map(Some),
            _ => Ok(None),
        }
    }

    pub fn key(&self, braid: &BraidWord, colors: &VectorPartition) -> String {
        key_for(&canonical_braid(braid), &colors.to_string(), &self.version)
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, braid: &BraidWord, colors: &VectorPartition) -> Result<Option<RationalQT>, CacheError> {
        let key = self.key(braid, colors);
        let bytes = match fs::read(self.path(&key)) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let entry: Entry = serde_json::from_slice(&bytes).map_err(|_| CacheError::Corrupt(key.clone()))?;
        let value_json = serde_json::to_vec(&entry.value).map_err(|_| CacheError::Corrupt(key.clone()))?;
        if sha256_hex(&value_json) != entry.digest || key_for(&entry.braid, &entry.colors, &entry.version) != key {
            return Err(CacheError::Corrupt(key));
        }
        Ok(Some(entry.value))
    }

    /// Writes once per key: the first complete file wins and later writers
    /// leave it alone.
    pub fn put(&self, braid: &BraidWord, colors: &VectorPartition, value: &RationalQT) -> Result<(), CacheError> {
        let key = self.key(braid, colors);
        let value_json = serde_json::to_vec(value).expect("serializable");
        let entry = Entry {
            version: self.version.clone(),
            braid: canonical_braid(braid),
            colors: colors.to_string(),
            value: value.clone(),
            digest: sha256_hex(&value_json),
        };
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".{key}.{}.{n}.tmp", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry).expect("serializable"))?;
        let target = self.path(&key);
        let res = match fs::hard_link(&tmp, &target) {
            Ok(()) => Ok(()),
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => Ok(()),
            Err(_) => fs::rename(&tmp, &target),
        };
        let _ = fs::remove_file(&tmp);
        res.map_err(Into::into)
    }

    /// Removes an entry that failed verification.
    pub fn evict(&self, braid: &BraidWord, colors: &VectorPartition) -> io::Result<()> {
        match fs::remove_file(self.path(&self.key(braid, colors))) {
            Err(e) if e.kind() != io::ErrorKind::NotFound => Err(e),
            _ => Ok(()),
        }
    }
}

fn key_for(braid: &str, colors: &str, version: &str) -> String {
    sha256_hex(format!("{braid}\n{colors}\n{version}").as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use lmov_core::exactring::LaurentQT;

    fn sample() -> (BraidWord, VectorPartition, RationalQT) {
        let b = BraidWord::parse("s1 s1 s1", 2).unwrap();
        let v = RationalQT::new(&LaurentQT::t_half(3) - &LaurentQT::q_half(-2), LaurentQT::quantum_int(2)).unwrap();
        (b, "(2)".parse().unwrap(), v)
    }

    #[test]
    fn read_after_write() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let (b, c, v) = sample();
        assert!(cache.get(&b, &c).unwrap().is_none());
        cache.put(&b, &c, &v).unwrap();
        let back = cache.get(&b, &c).unwrap().unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), serde_json::to_string(&v).unwrap());
        let padded = BraidWord::parse("s1 -s1 s1 s1 s1", 2).unwrap();
        assert_eq!(cache.key(&padded, &c), cache.key(&b, &c));
    }

    #[test]
    fn version_bump_misses() {
        let dir = tempfile::tempdir().unwrap();
        let (b, c, v) = sample();
        Cache::new(dir.path()).unwrap().put(&b, &c, &v).unwrap();
        let other = Cache::with_version(dir.path(), "next").unwrap();
        assert!(other.get(&b, &c).unwrap().is_none());
    }

    #[test]
    fn tampering_is_detected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path()).unwrap();
        let (b, c, v) = sample();
        cache.put(&b, &c, &v).unwrap();
        let path = cache.path(&cache.key(&b, &c));
        let text = fs::read_to_string(&path).unwrap();
        let mut entry: serde_json::Value = serde_json::from_str(&text).unwrap();
        entry["value"] = serde_json::to_value(RationalQT::one()).unwrap();
        fs::write(&path, entry.to_string()).unwrap();
        assert!(matches!(cache.get(&b, &c), Err(CacheError::Corrupt(_))));
        fs::write(&path, "{").unwrap();
        assert!(matches!(cache.get(&b, &c), Err(CacheError::Corrupt(_))));
        cache.evict(&b, &c).unwrap();
        assert!(cache.get(&b, &c).unwrap().is_none());
    }

    #[test]
    fn concurrent_writers_agree() {
        let dir = tempfile::tempdir().unwrap();
        let (b, c, v) = sample();
        std::thread::scope(|s| {
            for _ in 0..8 {
                s.spawn(|| Cache::new(dir.path()).unwrap().put(&b, &c, &v).unwrap());
            }
        });
        let cache = Cache::new(dir.path()).unwrap();
        assert_eq!(cache.get(&b, &c).unwrap(), Some(v));
        let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
        assert_eq!(files.len(), 1);
    }
}
