//! Disk-backed store for refinement-tree sum bounds.
//!
//! The store is a line-delimited JSON log, one entry per line, keyed by
//! `(pattern, n0, T, m)`. Loading replays the log (later entries win);
//! unreadable or invalid lines are skipped with a warning so one bad write
//! never poisons a cache. Writes are buffered and flushed as a rewrite of
//! the whole log through a temp file and an atomic rename, after merging
//! with whatever another process may have appended in the meantime.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use ffamily::FParams;
use pattern::Pattern;
use serde::{Deserialize, Serialize};
use verify::WStore;

pub const CACHE_FILE: &str = "wcache.jsonl";

/// One cached sum bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WCacheEntry {
    /// Nine-digit window string.
    pub pattern: String,
    pub n0: u32,
    #[serde(rename = "T")]
    pub t: u32,
    pub m: u32,
    #[serde(rename = "W")]
    pub w: f64,
    pub restarts: u32,
    /// Seconds since the epoch at write time; informational only.
    pub created_at: u64,
}

type Key = (String, u32, u32, u32);

fn key_of(e: &WCacheEntry) -> Key {
    (e.pattern.clone(), e.n0, e.t, e.m)
}

fn valid(e: &WCacheEntry) -> bool {
    e.pattern.len() == 9
        && e.pattern.chars().all(|c| ('1'..='3').contains(&c))
        && e.w.is_finite()
        && e.w >= 0.0
}

fn read_log(path: &Path) -> HashMap<Key, WCacheEntry> {
    let mut map = HashMap::new();
    let Ok(text) = fs::read_to_string(path) else {
        return map;
    };
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str::<WCacheEntry>(line) {
            Ok(e) if valid(&e) => {
                map.insert(key_of(&e), e);
            }
            Ok(_) => {
                eprintln!(
                    "warning: {} line {}: entry out of range, skipped",
                    path.display(),
                    lineno + 1
                );
            }
            Err(err) => {
                eprintln!(
                    "warning: {} line {}: unreadable entry skipped ({err})",
                    path.display(),
                    lineno + 1
                );
            }
        }
    }
    map
}

/// File-backed [`WStore`].
pub struct FileStore {
    path: PathBuf,
    entries: Mutex<HashMap<Key, WCacheEntry>>,
    /// Keys written by this process and not yet flushed.
    dirty: Mutex<Vec<Key>>,
}

impl FileStore {
    /// Opens (creating the directory if needed) and replays the log.
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .with_context(|| format!("creating cache directory {}", dir.display()))?;
        let path = dir.join(CACHE_FILE);
        let entries = read_log(&path);
        Ok(FileStore { path, entries: Mutex::new(entries), dirty: Mutex::new(Vec::new()) })
    }

    #[cfg(test)]
    fn len(&self) -> usize {
        self.entries.lock().unwrap().len()
    }

    /// Merges this process's new entries with the log on disk and rewrites
    /// it atomically. Entries already on disk keep their stored values.
    pub fn flush(&self) -> Result<()> {
        let mut dirty = self.dirty.lock().unwrap();
        if dirty.is_empty() {
            return Ok(());
        }
        let entries = self.entries.lock().unwrap();
        let mut on_disk = read_log(&self.path);
        for key in dirty.iter() {
            if !on_disk.contains_key(key) {
                if let Some(e) = entries.get(key) {
                    on_disk.insert(key.clone(), e.clone());
                }
            }
        }
        let mut rows: Vec<&WCacheEntry> = on_disk.values().collect();
        rows.sort_by(|a, b| key_of(a).cmp(&key_of(b)));

        let dir = self.path.parent().expect("cache file has a parent");
        let mut tmp = tempfile::NamedTempFile::new_in(dir).context("creating temp cache file")?;
        for e in rows {
            serde_json::to_writer(&mut tmp, e)?;
            tmp.write_all(b"\n")?;
        }
        tmp.persist(&self.path)
            .with_context(|| format!("replacing {}", self.path.display()))?;
        dirty.clear();
        Ok(())
    }
}

impl Drop for FileStore {
    fn drop(&mut self) {
        if let Err(e) = self.flush() {
            eprintln!("warning: cache flush failed: {e}");
        }
    }
}

impl WStore for FileStore {
    fn get(&self, window: &Pattern, params: &FParams) -> Option<(f64, u32)> {
        let key = (window.to_string(), params.n0(), params.t(), params.m());
        self.entries.lock().unwrap().get(&key).map(|e| (e.w, e.restarts))
    }

    fn put(&self, window: &Pattern, params: &FParams, w: f64, restarts: u32) {
        let entry = WCacheEntry {
            pattern: window.to_string(),
            n0: params.n0(),
            t: params.t(),
            m: params.m(),
            w,
            restarts,
            created_at: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let key = key_of(&entry);
        let mut entries = self.entries.lock().unwrap();
        if entries.insert(key.clone(), entry).is_none() {
            self.dirty.lock().unwrap().push(key);
        }
    }
}
