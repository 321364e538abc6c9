//! The bracket polynomials `c^{(k)}_{s,t}`, the one-variable family
//! `C^{(k)}_{lambda,mu}` and their exact identities.

mod cache;
pub mod checks;
mod jacobi;
mod ortho;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub use cache::{Cache, CacheEntry, CACHE_ENV, FORMAT_VERSION};
pub use jacobi::{jacobi_p, proportionality};
pub use ortho::{compute_C, compute_C_symbolic, substitute, OrthoPoly};

use crate::error::{Error, Result};
use crate::jordan::{Algebra, Family};
use crate::symbolic::{rodrigues, BracketPolynomial};

/// Largest `k` accepted by the CLI for each family (measured build times
/// stay under a few minutes single-machine).
pub fn max_k(family: Family) -> u32 {
    match family {
        Family::Rank1 => 12,
        Family::Sym(2) => 6,
        Family::Sym(3) => 3,
        Family::Sym(_) => 1,
        Family::Spin(_) => 3,
    }
}

type Memo = Mutex<HashMap<(Family, u32), Arc<BracketPolynomial>>>;
static MEMO: OnceLock<Memo> = OnceLock::new();

/// `c^{(k)}` through the in-process memo and the environment's disk cache.
pub fn compute_c(alg: &Algebra, k: u32) -> Result<Arc<BracketPolynomial>> {
    compute_c_with(alg, k, &Cache::from_env())
}

pub fn compute_c_with(alg: &Algebra, k: u32, cache: &Cache) -> Result<Arc<BracketPolynomial>> {
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = memo.lock().map_err(|_| poisoned())?.get(&(alg.family, k)) {
        return Ok(c.clone());
    }
    let c = match cache.load(alg.family, k) {
        Some(c) => c,
        None => {
            let c = rodrigues(alg, k)?;
            cache.store(&c)?;
            c
        }
    };
    let c = Arc::new(c);
    memo.lock()
        .map_err(|_| poisoned())?
        .insert((alg.family, k), c.clone());
    Ok(c)
}

fn poisoned() -> Error {
    Error::Io("bracket memo poisoned".into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::algebra;

    #[test]
    fn cache_round_trip_and_clear() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::at(dir.path());
        let a = algebra(Family::Sym(2));
        let c = rodrigues(&a, 2).unwrap();
        assert!(cache.load(a.family, 2).is_none());
        cache.store(&c).unwrap();
        assert_eq!(cache.load(a.family, 2).unwrap(), c);
        let listing = cache.inspect().unwrap();
        assert_eq!(listing.len(), 1);
        assert_eq!((listing[0].algebra.as_str(), listing[0].k), ("sym2", 2));
        std::fs::write(dir.path().join(listing[0].file.clone()), "{ broken").unwrap();
        assert!(cache.load(a.family, 2).is_none());
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.inspect().unwrap().is_empty());
    }

    #[test]
    fn disabled_cache_is_inert() {
        let cache = Cache::disabled();
        let a = algebra(Family::Rank1);
        cache.store(&rodrigues(&a, 1).unwrap()).unwrap();
        assert!(cache.load(a.family, 1).is_none());
        assert_eq!(cache.clear().unwrap(), 0);
    }
}
