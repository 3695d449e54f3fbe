//! On-disk memo of fermionic decompositions.
//!
//! Each entry is a JSON file named by the SHA-256 of the canonical request.
//! Entries are checked on read (schema version and the stored request must
//! match) and recomputed otherwise. Writes go to a temporary file in the
//! same directory and are renamed into place.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use krfermion::fermionic::{fermionic_decomposition, Decomposition, FactorList};
use krfermion::{LieType, RootSystem};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct Request {
    op: String,
    algebra: LieType,
    factors: FactorList,
}

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    schema: u32,
    request: Request,
    decomposition: Decomposition,
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> io::Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn request(rs: &RootSystem, factors: &FactorList) -> Request {
        // the decomposition does not depend on factor order
        Request {
            op: "fermionic".into(),
            algebra: rs.lie_type(),
            factors: factors.sorted(),
        }
    }

    fn path_for(&self, request: &Request) -> PathBuf {
        let canonical = serde_json::to_vec(&(SCHEMA_VERSION, request)).expect("serializable");
        let digest = Sha256::digest(&canonical);
        self.dir.join(format!("{digest:x}.json"))
    }

    /// Path of the entry for this request, whether or not it exists.
    pub fn entry_path(&self, rs: &RootSystem, factors: &FactorList) -> PathBuf {
        self.path_for(&Self::request(rs, factors))
    }

    pub fn load(&self, rs: &RootSystem, factors: &FactorList) -> Option<Decomposition> {
        let request = Self::request(rs, factors);
        let text = fs::read(self.path_for(&request)).ok()?;
        let entry: Entry = serde_json::from_slice(&text).ok()?;
        (entry.schema == SCHEMA_VERSION && entry.request == request).then_some(entry.decomposition)
    }

    pub fn store(&self, rs: &RootSystem, factors: &FactorList, d: &Decomposition) -> io::Result<()> {
        let request = Self::request(rs, factors);
        let path = self.path_for(&request);
        let entry = Entry {
            schema: SCHEMA_VERSION,
            request,
            decomposition: d.clone(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut tmp, &entry)?;
        tmp.write_all(b"\n")?;
        tmp.persist(path).map_err(|e| e.error)?;
        Ok(())
    }

    /// Cached fermionic decomposition, computed and stored on a miss. A
    /// failed write is reported on stderr and otherwise ignored.
    pub fn fermionic(&self, rs: &RootSystem, factors: &FactorList) -> Decomposition {
        if let Some(d) = self.load(rs, factors) {
            return d;
        }
        let d = fermionic_decomposition(rs, factors);
        if let Err(e) = self.store(rs, factors, &d) {
            eprintln!("warning: cache write in {} failed: {e}", self.dir.display());
        }
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use krfermion::KrFactor;

    fn setup() -> (tempfile::TempDir, Cache, RootSystem) {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path().join("c")).unwrap();
        (dir, cache, RootSystem::from_name("B3").unwrap())
    }

    fn factors(rs: &RootSystem, fs: &[(usize, usize)]) -> FactorList {
        FactorList::new(rs, fs.iter().map(|&(i, m)| KrFactor::new(i, m)).collect()).unwrap()
    }

    #[test]
    fn miss_then_hit() {
        let (_dir, cache, rs) = setup();
        let f = factors(&rs, &[(2, 1), (1, 1)]);
        assert!(cache.load(&rs, &f).is_none());
        let d = cache.fermionic(&rs, &f);
        assert_eq!(cache.load(&rs, &f), Some(d.clone()));
        // order of factors shares the entry
        assert_eq!(cache.load(&rs, &factors(&rs, &[(1, 1), (2, 1)])), Some(d));
        assert_eq!(fs::read_dir(cache.dir()).unwrap().count(), 1);
    }

    #[test]
    fn stale_or_corrupt_entries_are_recomputed() {
        let (_dir, cache, rs) = setup();
        let f = factors(&rs, &[(3, 2)]);
        let d = cache.fermionic(&rs, &f);
        let path = cache.entry_path(&rs, &f);

        fs::write(&path, "{not json").unwrap();
        assert!(cache.load(&rs, &f).is_none());
        assert_eq!(cache.fermionic(&rs, &f), d);

        let text = fs::read_to_string(&path).unwrap();
        let stale = text.replacen("\"schema\":1", "\"schema\":0", 1);
        assert_ne!(stale, text);
        fs::write(&path, stale).unwrap();
        assert!(cache.load(&rs, &f).is_none());

        // a valid entry stored under the wrong key is rejected
        let other = factors(&rs, &[(1, 1)]);
        cache.store(&rs, &other, &d).unwrap();
        fs::copy(cache.entry_path(&rs, &other), &path).unwrap();
        assert!(cache.load(&rs, &f).is_none());
        assert_eq!(cache.fermionic(&rs, &f), d);
        assert_eq!(cache.load(&rs, &f), Some(d));
    }
}
