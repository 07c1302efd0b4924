//! Gröbner bases of relation ideals, with an optional on-disk cache.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{DeltaSpec, IdealManifest, IdealSpec};
use crate::error::{Error, Result};
use crate::poly::{buchberger, GroebnerBasis, GroebnerStats, MonomialOrder, Polynomial, Progress, Var, VarLayout};

/// Version tag of cache files.
pub const CACHE_FORMAT: &str = "pbb-gb/1";

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "PBB_CACHE_DIR";

/// A Gröbner basis together with the ideal it was computed for.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    pub manifest: IdealManifest,
    pub basis: GroebnerBasis,
    pub from_cache: bool,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    format: String,
    manifest_key: String,
    manifest: IdealManifest,
    prime: u32,
    order: MonomialOrder,
    layout: Vec<Var>,
    stats: GroebnerStats,
    basis: Vec<Polynomial>,
}

impl IdealBasis {
    pub fn delta(&self) -> DeltaSpec {
        self.manifest.delta
    }

    pub fn variant(&self) -> u8 {
        self.manifest.variant
    }

    /// Computes the basis of `spec` over `GF(prime)` without caching.
    pub fn compute(spec: &IdealSpec, prime: u32, order: MonomialOrder, progress: Option<Progress>) -> Result<IdealBasis> {
        let basis = buchberger(&spec.generators, prime, order, progress)?;
        Ok(IdealBasis { manifest: spec.manifest.clone(), basis, from_cache: false })
    }

    /// Loads the basis from `dir` when a matching entry exists, otherwise
    /// computes and stores it. Unreadable or stale entries are recomputed.
    pub fn load_or_compute(
        spec: &IdealSpec,
        prime: u32,
        order: MonomialOrder,
        dir: &Path,
        progress: Option<Progress>,
    ) -> Result<IdealBasis> {
        let path = cache_path(dir, &spec.manifest, prime, order);
        match load(&path, &spec.manifest, prime, order) {
            Ok(Some(basis)) => {
                log::info!("Groebner basis loaded from {}", path.display());
                return Ok(IdealBasis { manifest: spec.manifest.clone(), basis, from_cache: true });
            }
            Ok(None) => {}
            Err(e) => log::warn!("ignoring cache entry {}: {e}", path.display()),
        }
        let out = IdealBasis::compute(spec, prime, order, progress)?;
        if let Err(e) = store(&path, &out) {
            log::warn!("could not write cache entry {}: {e}", path.display());
        }
        Ok(out)
    }
}

/// Cache directory: `$PBB_CACHE_DIR`, else `default`.
pub fn cache_dir(default: impl Into<PathBuf>) -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| default.into())
}

pub fn cache_path(dir: &Path, manifest: &IdealManifest, prime: u32, order: MonomialOrder) -> PathBuf {
    dir.join(format!("{}-{}-{}.json", &manifest.key()[..32], prime, order.name()))
}

fn load(path: &Path, manifest: &IdealManifest, prime: u32, order: MonomialOrder) -> Result<Option<GroebnerBasis>> {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let file: CacheFile = serde_json::from_str(&text)?;
    if file.format != CACHE_FORMAT
        || file.manifest_key != manifest.key()
        || &file.manifest != manifest
        || file.prime != prime
        || file.order != order
    {
        return Err(Error::Syntax("cache entry does not match the requested ideal".into()));
    }
    let layout = VarLayout::new(file.layout)?;
    GroebnerBasis::from_trusted_generators(&file.basis, prime, order, layout, file.stats).map(Some)
}

fn store(path: &Path, b: &IdealBasis) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let file = CacheFile {
        format: CACHE_FORMAT.into(),
        manifest_key: b.manifest.key(),
        manifest: b.manifest.clone(),
        prime: b.basis.prime(),
        order: b.basis.order(),
        layout: b.basis.layout().vars().to_vec(),
        stats: b.basis.stats().clone(),
        basis: b.basis.generators(),
    };
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, serde_json::to_vec(&file)?)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biquandle::Biquandle;
    use crate::ideals::build_ideal;

    #[test]
    fn cache_hit_matches_cold_computation() {
        let dir = std::env::temp_dir().join(format!("pbb-cache-test-{}", std::process::id()));
        let spec = build_ideal(&Biquandle::trivial(1), 2, DeltaSpec::Value(1)).unwrap();
        let cold = IdealBasis::load_or_compute(&spec, 101, MonomialOrder::DegRevLex, &dir, None).unwrap();
        assert!(!cold.from_cache);
        let warm = IdealBasis::load_or_compute(&spec, 101, MonomialOrder::DegRevLex, &dir, None).unwrap();
        assert!(warm.from_cache);
        assert_eq!(cold.basis.generators(), warm.basis.generators());
        // a corrupt entry is replaced
        let path = cache_path(&dir, &spec.manifest, 101, MonomialOrder::DegRevLex);
        fs::write(&path, "{").unwrap();
        let again = IdealBasis::load_or_compute(&spec, 101, MonomialOrder::DegRevLex, &dir, None).unwrap();
        assert!(!again.from_cache);
        assert_eq!(again.basis.generators(), cold.basis.generators());
        fs::remove_dir_all(&dir).ok();
    }
}
