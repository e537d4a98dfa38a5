//! On-disk copy of the character, Kostka, Weingarten and `W` tables.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wgcoe_core::combinatorics::Partition;
use wgcoe_core::exact::RationalFunction;
use wgcoe_core::tables::{self, TableSnapshot};

pub const CACHE_VERSION: &str = "wgcoe-cache-v1";
pub const CACHE_FILE: &str = "wgcoe-cache.json";
pub const CACHE_DIR_ENV: &str = "WGCOE_CACHE_DIR";

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CacheEntry {
    Character { key: String, value: i64 },
    Kostka { key: String, value: u64 },
    Wg { key: String, value: RationalFunction },
    #[serde(rename = "W")]
    W { key: String, value: RationalFunction },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CacheFile {
    pub version: String,
    pub entries: Vec<CacheEntry>,
}

fn pair_key(a: &Partition, b: &Partition) -> String {
    format!("{a};{b}")
}

fn parse_pair(key: &str) -> Result<(Partition, Partition), String> {
    let (a, b) = key.split_once(';').ok_or_else(|| format!("bad key `{key}`"))?;
    Ok((a.parse().map_err(|e| format!("{e}"))?, b.parse().map_err(|e| format!("{e}"))?))
}

fn parse_single(key: &str) -> Result<Partition, String> {
    key.parse().map_err(|e| format!("{e}"))
}

impl CacheFile {
    pub fn from_snapshot(snap: &TableSnapshot) -> Self {
        let mut entries = Vec::with_capacity(snap.len());
        entries.extend(snap.characters.iter().map(|(a, b, v)| CacheEntry::Character {
            key: pair_key(a, b),
            value: *v,
        }));
        entries.extend(snap.kostka.iter().map(|(a, b, v)| CacheEntry::Kostka {
            key: pair_key(a, b),
            value: *v,
        }));
        entries.extend(snap.wg.iter().map(|(k, v)| CacheEntry::Wg {
            key: k.to_string(),
            value: v.clone(),
        }));
        entries.extend(snap.w.iter().map(|(k, v)| CacheEntry::W {
            key: k.to_string(),
            value: v.clone(),
        }));
        Self {
            version: CACHE_VERSION.to_string(),
            entries,
        }
    }

    pub fn to_snapshot(&self) -> Result<TableSnapshot, String> {
        let mut snap = TableSnapshot::default();
        for e in &self.entries {
            match e {
                CacheEntry::Character { key, value } => {
                    let (a, b) = parse_pair(key)?;
                    snap.characters.push((a, b, *value));
                }
                CacheEntry::Kostka { key, value } => {
                    let (a, b) = parse_pair(key)?;
                    snap.kostka.push((a, b, *value));
                }
                CacheEntry::Wg { key, value } => snap.wg.push((parse_single(key)?, value.clone())),
                CacheEntry::W { key, value } => snap.w.push((parse_single(key)?, value.clone())),
            }
        }
        Ok(snap)
    }
}

/// `--cache-dir`, then `$WGCOE_CACHE_DIR`, then `$XDG_CACHE_HOME/wgcoe`, then `~/.cache/wgcoe`.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    let env = |k: &str| std::env::var_os(k).filter(|v| !v.is_empty()).map(PathBuf::from);
    env(CACHE_DIR_ENV)
        .or_else(|| env("XDG_CACHE_HOME").map(|p| p.join("wgcoe")))
        .or_else(|| env("HOME").map(|p| p.join(".cache").join("wgcoe")))
}

/// Parses a cache file; unknown versions are rejected.
pub fn parse(text: &str) -> Result<TableSnapshot, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("unreadable: {e}"))?;
    match value.get("version").and_then(|v| v.as_str()) {
        Some(CACHE_VERSION) => {}
        Some(other) => return Err(format!("version `{other}` is not `{CACHE_VERSION}`")),
        None => return Err("missing version tag".into()),
    }
    let file: CacheFile = serde_json::from_value(value).map_err(|e| format!("malformed: {e}"))?;
    file.to_snapshot()
}

/// A loaded cache directory. Problems are reported as warnings and the run
/// continues with in-memory tables only.
pub struct Cache {
    path: Option<PathBuf>,
    loaded: usize,
    pub warnings: Vec<String>,
}

impl Cache {
    pub fn disabled() -> Self {
        Self {
            path: None,
            loaded: 0,
            warnings: Vec::new(),
        }
    }

    pub fn open(dir: PathBuf) -> Self {
        let path = dir.join(CACHE_FILE);
        let mut cache = Self {
            path: Some(path.clone()),
            loaded: 0,
            warnings: Vec::new(),
        };
        match fs::read_to_string(&path) {
            Ok(text) => match parse(&text) {
                Ok(snap) => {
                    cache.loaded = snap.len();
                    tables::import(snap);
                }
                Err(e) => cache
                    .warnings
                    .push(format!("ignoring cache {}: {e}", path.display())),
            },
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => cache
                .warnings
                .push(format!("cannot read cache {}: {e}", path.display())),
        }
        cache
    }

    /// Writes the current tables if they grew, via a temporary file and rename.
    pub fn store(&mut self) {
        let Some(path) = self.path.clone() else {
            return;
        };
        let snap = tables::snapshot();
        if snap.len() <= self.loaded {
            return;
        }
        if let Err(e) = write_atomic(&path, &CacheFile::from_snapshot(&snap)) {
            self.warnings
                .push(format!("cache not written to {}: {e}; results were computed in memory", path.display()));
            return;
        }
        self.loaded = snap.len();
    }
}

fn write_atomic(path: &Path, file: &CacheFile) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{CACHE_FILE}.{}.tmp", std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        serde_json::to_writer(&mut f, file)?;
        f.write_all(b"\n")?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
