//! On-disk cache of computed tables: `I_<g>.json` (coefficient arrays) and
//! `hz_<g>_<m>.json` (`c_g_m` objects).

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::exact::{coeffs_from_json, coeffs_to_json, Poly};
use crate::hz::HZTable;

pub const CACHE_ENV: &str = "GAMMAENUM_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".cache";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskCache {
    dir: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheEntry {
    pub name: String,
    pub bytes: u64,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        DiskCache { dir: dir.into() }
    }

    /// `$GAMMAENUM_CACHE`, else `.cache/` in the working directory.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        DiskCache::new(dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn shadow_path(&self, g: usize) -> PathBuf {
        self.dir.join(format!("I_{g}.json"))
    }

    pub fn hz_path(&self, g_max: usize, m_max: usize) -> PathBuf {
        self.dir.join(format!("hz_{g_max}_{m_max}.json"))
    }

    fn read_json(&self, path: &Path) -> Result<Option<Value>> {
        match fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text)
                .map(Some)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display()))),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(Error::io(path, e)),
        }
    }

    fn write_json(&self, path: &Path, value: &Value) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let tmp = path.with_extension("json.tmp");
        let mut text = serde_json::to_string(value)?;
        text.push('\n');
        fs::write(&tmp, text).map_err(|e| Error::io(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
    }

    pub fn load_shadow(&self, g: usize) -> Result<Option<Poly>> {
        let path = self.shadow_path(g);
        match self.read_json(&path)? {
            Some(v) => Ok(Some(Poly::new(coeffs_from_json(&v)?))),
            None => Ok(None),
        }
    }

    pub fn store_shadow(&self, g: usize, p: &Poly) -> Result<()> {
        self.write_json(&self.shadow_path(g), &coeffs_to_json(p.coeffs()))
    }

    pub fn load_hz(&self, g_max: usize, m_max: usize) -> Result<Option<HZTable>> {
        match self.read_json(&self.hz_path(g_max, m_max))? {
            Some(v) => HZTable::from_json(&v).map(Some),
            None => Ok(None),
        }
    }

    pub fn store_hz(&self, t: &HZTable) -> Result<()> {
        self.write_json(&self.hz_path(t.g_max(), t.m_max()), &t.to_json())
    }

    fn is_ours(name: &str) -> bool {
        name.ends_with(".json") && (name.starts_with("I_") || name.starts_with("hz_"))
    }

    /// Cache files, sorted by name.
    pub fn status(&self) -> Result<Vec<CacheEntry>> {
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Error::io(&self.dir, e)),
        };
        let mut out = Vec::new();
        for entry in rd {
            let entry = entry.map_err(|e| Error::io(&self.dir, e))?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if Self::is_ours(&name) {
                let bytes = entry.metadata().map_err(|e| Error::io(entry.path(), e))?.len();
                out.push(CacheEntry { name, bytes });
            }
        }
        out.sort_by(|a, b| a.name.cmp(&b.name));
        Ok(out)
    }

    /// Removes the cache files; other files in the directory are left alone.
    pub fn clear(&self) -> Result<usize> {
        let entries = self.status()?;
        for e in &entries {
            let p = self.dir.join(&e.name);
            fs::remove_file(&p).map_err(|err| Error::io(&p, err))?;
        }
        Ok(entries.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_and_clears() {
        let tmp = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(tmp.path().join("c"));
        assert_eq!(cache.load_shadow(1).unwrap(), None);
        assert!(cache.status().unwrap().is_empty());
        let p = Poly::from_ints(&[0, 0, 1, 2, 1]);
        cache.store_shadow(1, &p).unwrap();
        assert_eq!(cache.load_shadow(1).unwrap(), Some(p));
        assert_eq!(
            fs::read_to_string(cache.shadow_path(1)).unwrap(),
            "[\"0\",\"0\",\"1\",\"2\",\"1\"]\n"
        );
        let t = crate::hz::hz_table(1, 4).unwrap();
        cache.store_hz(&t).unwrap();
        assert_eq!(cache.load_hz(1, 4).unwrap(), Some(t));
        fs::write(cache.dir().join("notes.txt"), "keep").unwrap();
        let names: Vec<_> = cache.status().unwrap().into_iter().map(|e| e.name).collect();
        assert_eq!(names, vec!["I_1.json", "hz_1_4.json"]);
        assert_eq!(cache.clear().unwrap(), 2);
        assert!(cache.dir().join("notes.txt").exists());
    }

    #[test]
    fn corrupt_file_is_an_error() {
        let tmp = tempfile::tempdir().unwrap();
        let cache = DiskCache::new(tmp.path());
        fs::write(cache.shadow_path(2), "not json").unwrap();
        assert!(cache.load_shadow(2).is_err());
    }
}
