//! Verified on-disk cache of designs, keyed by [`DesignParams::key`].

use std::fs;
use std::path::{Path, PathBuf};

use crate::apps::ooc::OocCode;
use crate::design::{Design, DesignParams};
use crate::error::{ForgeError, Result};
use crate::verify::{verify, verify_ooc};

pub const ENV_VAR: &str = "FORGE_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Cache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// The cache named by `FORGE_CACHE_DIR`, if set.
    pub fn from_env() -> Result<Option<Cache>> {
        match std::env::var_os(ENV_VAR) {
            Some(d) if !d.is_empty() => Cache::open(PathBuf::from(d)).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn discard(&self, path: &Path, why: &str) {
        log::warn!("dropping cache entry {}: {why}", path.display());
        let _ = fs::remove_file(path);
    }

    /// A cached design for `params`; entries that fail to parse or verify are removed.
    pub fn get(&self, params: &DesignParams) -> Option<Design> {
        let path = self.path(&params.key());
        let text = fs::read_to_string(&path).ok()?;
        let d = match Design::from_json(&text) {
            Ok(d) => d,
            Err(e) => {
                self.discard(&path, &e.to_string());
                return None;
            }
        };
        if d.params.key() != params.key() {
            self.discard(&path, "parameters differ from the key");
            return None;
        }
        let rep = verify(&d);
        if !rep.valid {
            self.discard(&path, &rep.summary());
            return None;
        }
        Some(d)
    }

    /// Store `design` after verifying it.
    pub fn put(&self, design: &Design) -> Result<PathBuf> {
        let rep = verify(design);
        if !rep.valid {
            return Err(ForgeError::Verification { what: format!("cache entry {}", design.params), detail: rep.summary() });
        }
        let path = self.path(&design.params.key());
        fs::write(&path, design.to_json()?)?;
        Ok(path)
    }

    pub fn get_ooc(&self, n: u32, m: u32) -> Option<OocCode> {
        let path = self.path(&format!("OOC2D-n{n}-m{m}"));
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<OocCode>(&text) {
            Ok(c) if c.n == n && c.m == m && verify_ooc(&c).valid => Some(c),
            _ => {
                self.discard(&path, "unreadable or invalid code");
                None
            }
        }
    }

    pub fn put_ooc(&self, code: &OocCode) -> Result<PathBuf> {
        let rep = verify_ooc(code);
        if !rep.valid {
            return Err(ForgeError::Verification { what: format!("cache entry OOC {}x{}", code.n, code.m), detail: rep.summary() });
        }
        let path = self.path(&format!("OOC2D-n{}-m{}", code.n, code.m));
        fs::write(&path, serde_json::to_string_pretty(code)?)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::design::BaseBlock;

    #[test]
    fn round_trip_and_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let p = DesignParams::strict_gdd(4, 2, vec![3]);
        let good = Design::new(p.clone(), vec![BaseBlock::from_coords(&[0, 1, 3])], "test");
        cache.put(&good).unwrap();
        assert_eq!(cache.get(&p), Some(good.clone()));
        let bad = Design::new(p.clone(), vec![BaseBlock::from_coords(&[0, 1, 2])], "test");
        assert!(cache.put(&bad).is_err());
        fs::write(cache.path(&p.key()), bad.to_json().unwrap()).unwrap();
        assert_eq!(cache.get(&p), None);
        assert!(!cache.path(&p.key()).exists());
    }
}
