//! Content-addressed disk cache for oracle optima.
//!
//! Each record lives in `<dir>/<key>.orc`, where `key` is the hex SHA-256 of
//! the canonical instance text, problem, parameter and profile. Record
//! layout, all integers little-endian:
//!
//! ```text
//! magic    6 bytes  "CDSORC"
//! version  u16      1
//! objective u64
//! count    u32
//! vertices count x u32, increasing
//! ```

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "CDS_ORACLE_CACHE";

const MAGIC: &[u8; 6] = b"CDSORC";
const VERSION: u16 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleRecord {
    pub objective: u64,
    pub vertices: Vec<usize>,
}

impl OracleRecord {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(20 + 4 * self.vertices.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&self.objective.to_le_bytes());
        out.extend_from_slice(&(self.vertices.len() as u32).to_le_bytes());
        for &v in &self.vertices {
            out.extend_from_slice(&(v as u32).to_le_bytes());
        }
        out
    }

    pub fn decode(bytes: &[u8]) -> Option<Self> {
        let rest = bytes.strip_prefix(MAGIC.as_slice())?;
        let (version, rest) = rest.split_first_chunk::<2>()?;
        if u16::from_le_bytes(*version) != VERSION {
            return None;
        }
        let (objective, rest) = rest.split_first_chunk::<8>()?;
        let (count, rest) = rest.split_first_chunk::<4>()?;
        let count = u32::from_le_bytes(*count) as usize;
        if rest.len() != 4 * count {
            return None;
        }
        let vertices = rest
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes(c.try_into().expect("chunk of four")) as usize)
            .collect();
        Some(OracleRecord { objective: u64::from_le_bytes(*objective), vertices })
    }
}

#[derive(Clone, Debug, Default)]
pub struct OracleCache {
    dir: Option<PathBuf>,
}

impl OracleCache {
    /// `None` disables caching.
    pub fn new(dir: Option<PathBuf>) -> Self {
        OracleCache { dir }
    }

    pub fn from_env() -> Self {
        OracleCache::new(std::env::var_os(CACHE_ENV).map(PathBuf::from))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn key(instance_text: &str, problem: &str, param: u64, profile: &str) -> String {
        let mut h = Sha256::new();
        h.update(instance_text.as_bytes());
        h.update(b"\0");
        h.update(format!("{problem}\0{param}\0{profile}").as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.orc")))
    }

    pub fn get(&self, key: &str) -> Option<OracleRecord> {
        let bytes = fs::read(self.path(key)?).ok()?;
        OracleRecord::decode(&bytes)
    }

    /// Writes through a temporary file and a rename so concurrent readers
    /// never see a partial record.
    pub fn put(&self, key: &str, record: &OracleRecord) -> io::Result<()> {
        let (Some(dir), Some(path)) = (&self.dir, self.path(key)) else {
            return Ok(());
        };
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!("{key}.orc.{}.tmp", std::process::id()));
        fs::write(&tmp, record.encode())?;
        fs::rename(tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_round_trip() {
        let r = OracleRecord { objective: 42, vertices: vec![0, 3, 17] };
        let bytes = r.encode();
        assert_eq!(&bytes[..6], b"CDSORC");
        assert_eq!(OracleRecord::decode(&bytes), Some(r));
        assert_eq!(OracleRecord::decode(&bytes[..bytes.len() - 1]), None);
        assert_eq!(OracleRecord::decode(b"CDSORX"), None);
    }

    #[test]
    fn keys_separate_parameters() {
        let a = OracleCache::key("cds 1 1 0 -\n", "pcds", 1, "dom");
        assert_eq!(a.len(), 64);
        assert_ne!(a, OracleCache::key("cds 1 1 0 -\n", "pcds", 2, "dom"));
        assert_ne!(a, OracleCache::key("cds 1 1 0 -\n", "bcds", 1, "dom"));
    }

    #[test]
    fn disk_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = OracleCache::new(Some(dir.path().join("orc")));
        let r = OracleRecord { objective: 5, vertices: vec![1] };
        assert_eq!(cache.get("abc"), None);
        cache.put("abc", &r).unwrap();
        assert_eq!(cache.get("abc"), Some(r));
        let off = OracleCache::new(None);
        off.put("abc", &OracleRecord { objective: 1, vertices: vec![] }).unwrap();
        assert_eq!(off.get("abc"), None);
    }
}
