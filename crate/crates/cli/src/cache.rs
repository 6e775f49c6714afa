use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::report::Report;

/// Bump when the meaning of any cached payload changes.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+1");

/// Normalisations baked into the invariant pipelines; part of every key.
pub fn conventions() -> Value {
    json!({
        "ip_substitution": "q -> q^-2",
        "pbw_twist_sign": [1, -1],
        "pbw_bps_exponent": [1, -1],
        "pbw_u_exponent": [-1, 1, -2, 2],
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    key: Value,
    timestamp: u64,
    payload: Report,
}

/// Content-addressed store of finished reports.
pub struct Cache {
    dir: PathBuf,
}

pub struct CacheKey {
    material: Value,
    digest: String,
}

impl CacheKey {
    pub fn new(command: &str, quiver_hash: &str, params: &Value) -> Self {
        let material = json!({
            "command": command,
            "quiver": quiver_hash,
            "params": params,
            "code_version": CODE_VERSION,
            "conventions": conventions(),
        });
        let digest = hex::encode(Sha256::digest(material.to_string().as_bytes()));
        CacheKey { material, digest }
    }

    pub fn digest(&self) -> &str {
        &self.digest
    }
}

impl Cache {
    pub fn open(dir: &Path) -> std::io::Result<Self> {
        std::fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest))
    }

    /// A stored report, if present, readable, and for the same key and code version.
    pub fn get(&self, key: &CacheKey, command: &str, quiver_hash: &str) -> Option<Report> {
        let path = self.path(key);
        let text = std::fs::read_to_string(&path).ok()?;
        let entry: CacheEntry = match serde_json::from_str(&text) {
            Ok(e) => e,
            Err(e) => {
                log::warn!("ignoring unreadable cache entry {}: {e}", path.display());
                return None;
            }
        };
        if entry.key != key.material {
            log::info!("cache entry {} is stale", path.display());
            return None;
        }
        if !entry.payload.validate(command, quiver_hash) {
            log::warn!("cache entry {} failed validation", path.display());
            return None;
        }
        Some(entry.payload)
    }

    /// Writes to a temporary file in the cache directory, then renames it into place.
    pub fn put(&self, key: &CacheKey, report: &Report) -> std::io::Result<()> {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let entry = CacheEntry {
            key: key.material.clone(),
            timestamp,
            payload: report.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.flush()?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
