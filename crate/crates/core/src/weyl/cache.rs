//! On-disk cache of orbit catalogs.

use std::fs;
use std::path::{Path, PathBuf};

use super::orbit::sha256_hex;
use super::{effective_orbit, OrbitCatalog, OrbitClass, CATALOG_VERSION, FILTER_VERSION};
use crate::error::{Error, Result};

/// A directory of catalogs keyed by space, seed, bound, catalog version and filter version.
#[derive(Clone, Debug)]
pub struct CatalogCache {
    dir: PathBuf,
}

impl CatalogCache {
    /// Creates the directory if needed and checks that it is writable.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref().to_path_buf();
        fs::create_dir_all(&dir)?;
        let probe = dir.join(".write-probe");
        fs::write(&probe, b"")?;
        fs::remove_file(&probe)?;
        Ok(CatalogCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for<C: OrbitClass>(&self, seed: &C, bound: Option<u64>) -> PathBuf {
        let key = format!("{}|{}|{}|{:?}", C::KIND, seed.space(), seed, bound);
        let digest = &sha256_hex(key.as_bytes())[..16];
        self.dir.join(format!(
            "{}-{}-{}-v{}-f{}-{}.json",
            C::KIND,
            seed.space().n,
            seed.space().s,
            CATALOG_VERSION,
            FILTER_VERSION,
            digest
        ))
    }

    /// Loads the catalog for (seed, bound), building and storing it on a miss.
    /// Returns the catalog and whether it came from disk.
    pub fn orbit<C: OrbitClass>(&self, seed: &C, bound: Option<u64>) -> Result<(OrbitCatalog<C>, bool)> {
        let path = self.path_for(seed, bound);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(cat) = OrbitCatalog::<C>::from_json(&text) {
                if &cat.seed == seed && cat.filter_version == FILTER_VERSION {
                    return Ok((cat, true));
                }
            }
        }
        let cat = effective_orbit(seed, bound)?;
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, cat.to_json())?;
        fs::rename(&tmp, &path).map_err(Error::from)?;
        Ok((cat, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{CurveClass, Space};

    #[test]
    fn second_lookup_hits_disk() {
        let dir = std::env::temp_dir().join(format!("cremona-cache-test-{}", std::process::id()));
        let cache = CatalogCache::open(&dir).unwrap();
        let seed = CurveClass::linear(Space::new(3, 6).unwrap(), &[0, 1]);
        let (a, hit_a) = cache.orbit(&seed, None).unwrap();
        let (b, hit_b) = cache.orbit(&seed, None).unwrap();
        assert!(!hit_a && hit_b);
        assert_eq!(a.version_hash(), b.version_hash());
        fs::remove_dir_all(&dir).unwrap();
    }
}
