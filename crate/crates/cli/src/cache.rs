//! Append-only JSON-lines result cache.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::record::ResultRecord;

#[derive(Serialize, Deserialize)]
struct Line {
    key: String,
    record: serde_json::Value,
}

pub struct Cache {
    path: PathBuf,
    writer: Mutex<()>,
}

impl Cache {
    pub fn new(path: impl AsRef<Path>) -> Cache {
        Cache { path: path.as_ref().to_path_buf(), writer: Mutex::new(()) }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Most recent record stored under `key`; unreadable lines are skipped.
    pub fn lookup(&self, key: &str) -> Option<ResultRecord> {
        let f = std::fs::File::open(&self.path).ok()?;
        let mut found = None;
        for line in BufReader::new(f).lines().map_while(|l| l.ok()) {
            if let Ok(l) = serde_json::from_str::<Line>(&line) {
                if l.key == key {
                    if let Ok(r) = serde_json::from_value::<ResultRecord>(l.record) {
                        found = Some(r);
                    }
                }
            }
        }
        found
    }

    pub fn append(&self, key: &str, record: &ResultRecord) -> std::io::Result<()> {
        let _guard = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        let line = Line { key: key.to_string(), record: serde_json::to_value(record).expect("record serialises") };
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{}", serde_json::to_string(&line).expect("line serialises"))
    }
}
