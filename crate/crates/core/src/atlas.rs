//! A content-addressed directory of reports with an index keyed by input
//! digest, command, arguments and limits.

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const INDEX_FILE: &str = "index.json";

#[derive(Debug, Clone)]
pub struct Atlas {
    dir: PathBuf,
}

fn storage(what: &str, path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Storage(format!("{what} {}: {e}", path.display()))
}

impl Atlas {
    /// Opens (creating if needed) the atlas directory.
    pub fn open(dir: impl Into<PathBuf>) -> Result<Atlas> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| storage("cannot create", &dir, e))?;
        Ok(Atlas { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(digest: &str, command: &str, args: &str, limits: &str) -> String {
        format!("{digest}:{command}:{args}:{limits}")
    }

    pub fn index(&self) -> Result<BTreeMap<String, String>> {
        let path = self.dir.join(INDEX_FILE);
        match fs::read(&path) {
            Ok(bytes) => serde_json::from_slice(&bytes).map_err(|e| storage("corrupt index", &path, e)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(BTreeMap::new()),
            Err(e) => Err(storage("cannot read", &path, e)),
        }
    }

    /// Stored bytes for `key`, if present and intact.
    pub fn lookup(&self, key: &str) -> Result<Option<Vec<u8>>> {
        let Some(name) = self.index()?.get(key).cloned() else {
            return Ok(None);
        };
        let path = self.dir.join(&name);
        match fs::read(&path) {
            Ok(bytes) if content_name(&bytes) == name => Ok(Some(bytes)),
            Ok(_) => Ok(None),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(storage("cannot read", &path, e)),
        }
    }

    /// Stores `bytes` under their content hash and records `key`; returns
    /// the file name.
    pub fn store(&self, key: &str, bytes: &[u8]) -> Result<String> {
        let name = content_name(bytes);
        self.write_atomic(&name, bytes)?;
        let mut index = self.index()?;
        index.insert(key.to_string(), name.clone());
        let mut encoded = serde_json::to_vec_pretty(&index).expect("index serializes");
        encoded.push(b'\n');
        self.write_atomic(INDEX_FILE, &encoded)?;
        Ok(name)
    }

    fn write_atomic(&self, name: &str, bytes: &[u8]) -> Result<()> {
        let target = self.dir.join(name);
        let tmp = self.dir.join(format!(".{name}.{}.tmp", std::process::id()));
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(bytes)?;
            f.sync_all()?;
            fs::rename(&tmp, &target)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            storage("cannot write", &target, e)
        })
    }
}

pub fn content_name(bytes: &[u8]) -> String {
    format!("{}.json", hex::encode(Sha256::digest(bytes)))
}
