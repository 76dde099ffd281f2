use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{greedy_complete, local_search_resize, SearchConfig};
use crate::projgeom::Geometry;
use crate::spread::{is_maximal, Origin, PartialSpread};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedFailure {
    pub q: u32,
    pub best_size: usize,
}

impl std::fmt::Display for SeedFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let q = self.q as usize;
        write!(
            f,
            "no partial spread of PG(4,{}) of size {} found; best was {}. Retry with another seed",
            self.q,
            q * q * q + 1,
            self.best_size
        )
    }
}

/// Searches PG(4,q) (`geom`) for a maximal partial spread of size q^3 + 1,
/// the largest possible there. Lines are tagged as hyperplane-resident so the
/// result can be embedded directly as a ladder seed.
pub fn seed_pg4_mps(geom: &Geometry, rng_seed: u64, cfg: &SearchConfig) -> Result<PartialSpread, SeedFailure> {
    assert_eq!(geom.dim(), 4, "seeds live in PG(4,q)");
    let q = geom.q() as usize;
    let target = q * q * q + 1;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut start = PartialSpread::new(geom);
    greedy_complete(geom, &mut start, &mut rng, Origin::Search);
    let found =
        local_search_resize(geom, &start, target, &cfg.with_seed(rng_seed), &mut |_| {}, None).map_err(|f| {
            SeedFailure {
                q: geom.q(),
                best_size: f.best_size,
            }
        })?;
    debug_assert!(is_maximal(geom, &found.spread).is_maximal());
    Ok(
        PartialSpread::from_lines(geom, found.spread.lines().iter().cloned(), Origin::Hyperplane)
            .expect("lines of a partial spread"),
    )
}
