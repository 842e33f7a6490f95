use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// What a command produced, apart from the envelope metadata.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub payload: Value,
    pub discrepancy_notices: Vec<String>,
}

/// One line of the cache file.
#[derive(Serialize, Deserialize)]
struct Record {
    key: String,
    command: String,
    outcome: Outcome,
}

/// Append-only JSON-lines store keyed by a SHA-256 of the canonical
/// `(command, params, config)` request. Readers take a shared lock and
/// writers an exclusive one; the last record for a key wins.
pub struct Cache {
    path: PathBuf,
}

/// Content hash of a request; `serde_json::Value` maps are sorted, so the
/// serialization is canonical.
pub fn request_key(command: &str, params: &Value, config: &Value) -> String {
    let canonical = serde_json::json!({ "command": command, "params": params, "config": config });
    let digest = Sha256::digest(canonical.to_string().as_bytes());
    format!("{digest:x}")
}

impl Cache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Cache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn lookup(&self, key: &str) -> std::io::Result<Option<Outcome>> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        file.lock_shared()?;
        let mut found = None;
        for line in BufReader::new(&file).lines() {
            let line = line?;
            // a torn or foreign line is skipped rather than trusted
            if let Ok(r) = serde_json::from_str::<Record>(&line) {
                if r.key == key {
                    found = Some(r.outcome);
                }
            }
        }
        file.unlock()?;
        Ok(found)
    }

    pub fn store(&self, key: &str, command: &str, outcome: &Outcome) -> std::io::Result<()> {
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            std::fs::create_dir_all(dir)?;
        }
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path)?;
        file.lock()?;
        let record = Record { key: key.to_owned(), command: command.to_owned(), outcome: outcome.clone() };
        let mut line = serde_json::to_string(&record).map_err(std::io::Error::other)?;
        line.push('\n');
        file.write_all(line.as_bytes())?;
        file.flush()?;
        file.unlock()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().join("sub/cache.jsonl"));
        let out = Outcome { payload: serde_json::json!({"kind": "x", "v": "1/2"}), discrepancy_notices: vec![] };
        assert_eq!(cache.lookup("k").unwrap(), None);
        cache.store("k", "field", &out).unwrap();
        assert_eq!(cache.lookup("k").unwrap(), Some(out));
        assert_eq!(cache.lookup("other").unwrap(), None);
    }

    #[test]
    fn key_ignores_map_order() {
        let a = serde_json::json!({"d": 5, "bound": 2});
        let b: Value = serde_json::from_str(r#"{"bound": 2, "d": 5}"#).unwrap();
        assert_eq!(request_key("sunit", &a, &Value::Null), request_key("sunit", &b, &Value::Null));
        assert_ne!(request_key("sunit", &a, &Value::Null), request_key("field", &a, &Value::Null));
    }
}
