//! Persistent residue cache: an append-only file of JSON lines
//! `{"k":[1,2],"p":7,"N":2,"residue":"17"}`. Duplicate keys are allowed and
//! the last one read wins. Lines that fail to parse or validate are skipped
//! with a warning.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Mutex, RwLock};

use log::warn;
use serde::{Deserialize, Serialize};

use super::fmzv::fmzv;
use super::modular::Modulus;
use super::primes::is_prime;
use crate::error::{Error, Result};
use crate::word::Composition;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FmzvKey {
    pub composition: Composition,
    pub prime: u64,
    pub depth: u32,
}

#[derive(Serialize, Deserialize)]
struct CacheRecord {
    k: Vec<u32>,
    p: u64,
    #[serde(rename = "N")]
    depth: u32,
    residue: String,
}

impl CacheRecord {
    fn from_entry(key: &FmzvKey, residue: u128) -> Self {
        CacheRecord {
            k: key.composition.parts().to_vec(),
            p: key.prime,
            depth: key.depth,
            residue: residue.to_string(),
        }
    }

    fn validate(self) -> std::result::Result<(FmzvKey, u128), String> {
        let composition = Composition::new(self.k).map_err(|e| e.to_string())?;
        if !is_prime(self.p) {
            return Err(format!("{} is not prime", self.p));
        }
        let m = Modulus::new(self.p, self.depth).map_err(|e| e.to_string())?;
        let residue: u128 = self
            .residue
            .parse()
            .map_err(|e| format!("bad residue {:?}: {e}", self.residue))?;
        if residue >= m.value() {
            return Err(format!("residue {residue} not reduced mod {}", m.value()));
        }
        Ok((
            FmzvKey {
                composition,
                prime: self.p,
                depth: self.depth,
            },
            residue,
        ))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub entries: usize,
    pub hits: u64,
    pub misses: u64,
    pub skipped_on_load: usize,
}

/// Concurrent readers share the map; writers are serialized on the file handle.
#[derive(Debug)]
pub struct ResidueCache {
    path: Option<PathBuf>,
    map: RwLock<HashMap<FmzvKey, u128>>,
    writer: Mutex<Option<BufWriter<File>>>,
    hits: AtomicU64,
    misses: AtomicU64,
    skipped_on_load: usize,
}

impl ResidueCache {
    pub fn in_memory() -> Self {
        ResidueCache {
            path: None,
            map: RwLock::new(HashMap::new()),
            writer: Mutex::new(None),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            skipped_on_load: 0,
        }
    }

    /// Loads `path` if it exists and opens it for appending.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut map = HashMap::new();
        let mut skipped = 0;
        if path.exists() {
            let file = File::open(&path).map_err(|e| io_err(&path, e))?;
            for (lineno, line) in BufReader::new(file).lines().enumerate() {
                let line = line.map_err(|e| io_err(&path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                let parsed = serde_json::from_str::<CacheRecord>(&line)
                    .map_err(|e| e.to_string())
                    .and_then(CacheRecord::validate);
                match parsed {
                    Ok((key, residue)) => {
                        map.insert(key, residue);
                    }
                    Err(why) => {
                        skipped += 1;
                        warn!("{}:{}: dropping cache entry: {why}", path.display(), lineno + 1);
                    }
                }
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&path)
            .map_err(|e| io_err(&path, e))?;
        Ok(ResidueCache {
            path: Some(path),
            map: RwLock::new(map),
            writer: Mutex::new(Some(BufWriter::new(file))),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
            skipped_on_load: skipped,
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, key: &FmzvKey) -> Option<u128> {
        let found = self.map.read().expect("cache lock").get(key).copied();
        match found {
            Some(_) => self.hits.fetch_add(1, Ordering::Relaxed),
            None => self.misses.fetch_add(1, Ordering::Relaxed),
        };
        found
    }

    pub fn put(&self, key: FmzvKey, residue: u128) -> Result<()> {
        self.put_many(vec![(key, residue)])
    }

    /// Inserts a batch and appends it to the file under one lock.
    pub fn put_many(&self, entries: Vec<(FmzvKey, u128)>) -> Result<()> {
        if entries.is_empty() {
            return Ok(());
        }
        let mut writer = self.writer.lock().expect("cache writer lock");
        if let Some(w) = writer.as_mut() {
            for (key, residue) in &entries {
                let line = serde_json::to_string(&CacheRecord::from_entry(key, *residue))
                    .expect("plain record");
                writeln!(w, "{line}").map_err(|e| self.io(e))?;
            }
            w.flush().map_err(|e| self.io(e))?;
        }
        let mut map = self.map.write().expect("cache lock");
        map.extend(entries);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            entries: self.len(),
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
            skipped_on_load: self.skipped_on_load,
        }
    }

    /// Empties the map and truncates the backing file.
    pub fn clear(&self) -> Result<()> {
        let mut writer = self.writer.lock().expect("cache writer lock");
        if let Some(path) = &self.path {
            let file = OpenOptions::new()
                .create(true)
                .write(true)
                .truncate(true)
                .open(path)
                .map_err(|e| io_err(path, e))?;
            drop(file);
            let file = OpenOptions::new()
                .append(true)
                .open(path)
                .map_err(|e| io_err(path, e))?;
            *writer = Some(BufWriter::new(file));
        }
        self.map.write().expect("cache lock").clear();
        Ok(())
    }

    /// Recomputes every entry and returns the keys whose stored residue is wrong.
    /// Wrong entries are removed from memory.
    pub fn audit(&self) -> Result<Vec<FmzvKey>> {
        let entries: Vec<(FmzvKey, u128)> = self
            .map
            .read()
            .expect("cache lock")
            .iter()
            .map(|(k, v)| (k.clone(), *v))
            .collect();
        let mut bad = Vec::new();
        for (key, stored) in entries {
            if fmzv(&key.composition, key.prime, key.depth)? != stored {
                warn!(
                    "cache entry {} p={} N={} disagrees with recomputation",
                    key.composition, key.prime, key.depth
                );
                bad.push(key);
            }
        }
        let mut map = self.map.write().expect("cache lock");
        for key in &bad {
            map.remove(key);
        }
        bad.sort();
        Ok(bad)
    }

    fn io(&self, e: std::io::Error) -> Error {
        match &self.path {
            Some(p) => io_err(p, e),
            None => Error::Io(e.to_string()),
        }
    }
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}
