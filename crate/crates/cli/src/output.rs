//! Staged outputs, atomic writes and the run manifest.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const MANIFEST_NAME: &str = "manifest.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FileRecord {
    pub name: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct RunManifest<'a> {
    pub command: &'a str,
    pub version: &'a str,
    pub threads: usize,
    pub wall_clock_s: f64,
    pub config: &'a serde_json::Value,
    pub files: Vec<FileRecord>,
}

/// Files of one run, held in memory until [`Artifacts::commit`].
#[derive(Debug, Default)]
pub struct Artifacts {
    files: Vec<(String, Vec<u8>)>,
}

impl Artifacts {
    pub fn add(&mut self, name: &str, bytes: Vec<u8>) {
        self.files.retain(|f| f.0 != name);
        self.files.push((name.to_string(), bytes));
    }

    pub fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_vec_pretty(value)?;
        text.push(b'\n');
        self.add(name, text);
        Ok(())
    }

    /// CSV with an explicit header, so an empty table still has one.
    pub fn csv<T: Serialize>(&mut self, name: &str, header: &[&str], rows: impl IntoIterator<Item = T>) -> Result<()> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(header)?;
        for row in rows {
            w.serialize(row)?;
        }
        let bytes = w.into_inner().map_err(|e| anyhow::anyhow!("csv: {e}"))?;
        self.add(name, bytes);
        Ok(())
    }

    pub fn text(&mut self, name: &str, text: String) {
        self.add(name, text.into_bytes());
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.files.iter().map(|f| f.0.as_str())
    }

    pub fn get(&self, name: &str) -> Option<&[u8]> {
        self.files.iter().find(|f| f.0 == name).map(|f| f.1.as_slice())
    }

    /// Writes every file atomically, then the manifest. On failure the files
    /// already written by this call are removed.
    pub fn commit(self, dir: &Path, manifest: RunManifest) -> Result<PathBuf> {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut written = Vec::new();
        let mut manifest = manifest;
        let result = (|| -> Result<()> {
            for (name, bytes) in &self.files {
                write_atomic(dir, name, bytes)?;
                written.push(dir.join(name));
                manifest.files.push(FileRecord {
                    name: name.clone(),
                    bytes: bytes.len(),
                    sha256: format!("{:x}", Sha256::digest(bytes)),
                });
            }
            let mut text = serde_json::to_vec_pretty(&manifest)?;
            text.push(b'\n');
            write_atomic(dir, MANIFEST_NAME, &text)
        })();
        if let Err(e) = result {
            for p in written {
                let _ = std::fs::remove_file(p);
            }
            return Err(e);
        }
        Ok(dir.join(MANIFEST_NAME))
    }
}

fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<()> {
    let target = dir.join(name);
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(&target).with_context(|| format!("writing {}", target.display()))?;
    Ok(())
}
