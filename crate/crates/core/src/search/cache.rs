use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::RwLock;

use serde::{Deserialize, Serialize};

use crate::bits::ceil_log2_u64;
use crate::chain::binary_length_u64;
use crate::error::LabError;

#[derive(Debug, Serialize, Deserialize)]
struct Row {
    class: String,
    n: u64,
    length: u32,
}

/// Exact chain lengths keyed by `(class, n)`.
///
/// Entries are facts: inserting a different length for an existing key is an
/// error. Readers share the lock; batch writers merge under one exclusive
/// acquisition.
#[derive(Debug, Default)]
pub struct LengthCache {
    path: Option<PathBuf>,
    entries: RwLock<BTreeMap<(String, u64), u32>>,
}

impl LengthCache {
    pub fn new() -> Self {
        Self::default()
    }

    /// Loads `path` if it exists; a missing file gives an empty cache bound
    /// to that path.
    pub fn open(path: impl AsRef<Path>) -> Result<Self, LabError> {
        let path = path.as_ref().to_path_buf();
        let cache = LengthCache {
            path: Some(path.clone()),
            entries: RwLock::default(),
        };
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(cache),
            Err(e) => return Err(file_error(&path, e)),
        };
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        for row in reader.deserialize::<Row>() {
            let row = row.map_err(|e| file_error(&path, e))?;
            // Every admissible class lies between these two bounds.
            if row.n == 0 || row.length < ceil_log2_u64(row.n) || row.length > binary_length_u64(row.n) {
                return Err(file_error(
                    &path,
                    format!("impossible entry ({}, {}, {})", row.class, row.n, row.length),
                ));
            }
            cache.insert(&row.class, row.n, row.length)?;
        }
        Ok(cache)
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn len(&self) -> usize {
        self.entries.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, class: &str, n: u64) -> Option<u32> {
        self.entries.read().unwrap().get(&(class.to_string(), n)).copied()
    }

    pub fn insert(&self, class: &str, n: u64, length: u32) -> Result<(), LabError> {
        self.merge(class, [(n, length)])
    }

    /// Inserts a batch under a single write lock. Conflicts abort the merge
    /// before anything is written.
    pub fn merge(&self, class: &str, batch: impl IntoIterator<Item = (u64, u32)>) -> Result<(), LabError> {
        let batch: Vec<(u64, u32)> = batch.into_iter().collect();
        let mut entries = self.entries.write().unwrap();
        for &(n, length) in &batch {
            if let Some(&existing) = entries.get(&(class.to_string(), n)) {
                if existing != length {
                    return Err(LabError::CacheConflict {
                        class: class.to_string(),
                        n,
                        existing,
                        incoming: length,
                    });
                }
            }
        }
        for (n, length) in batch {
            entries.insert((class.to_string(), n), length);
        }
        Ok(())
    }

    /// CSV text `class,n,length`, sorted by `(class, n)`.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for ((class, n), &length) in self.entries.read().unwrap().iter() {
            writer
                .serialize(Row {
                    class: class.clone(),
                    n: *n,
                    length,
                })
                .expect("writing to memory");
        }
        if self.is_empty() {
            writer.write_record(["class", "n", "length"]).expect("writing to memory");
        }
        String::from_utf8(writer.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }

    /// Writes the cache back to the file it was opened from.
    pub fn save(&self) -> Result<(), LabError> {
        match &self.path {
            Some(path) => fs::write(path, self.to_csv()).map_err(|e| file_error(path, e)),
            None => Ok(()),
        }
    }
}

fn file_error(path: &Path, e: impl std::fmt::Display) -> LabError {
    LabError::CacheFile {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}
