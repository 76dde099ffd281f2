use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{bounds, derive_seed, local_search_resize, SearchConfig};
use crate::builder::{cover_holes, n_max, RemovalOrder};
use crate::cert::{Certificate, Provenance};
use crate::construct::{embed_spread, regular_spread, structured_pg4_seed};
use crate::error::{Error, Result};
use crate::projgeom::Geometry;
use crate::spread::{is_maximal, Origin, PartialSpread};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SizeSource {
    Ladder,
    Search,
    Spread,
}

impl std::fmt::Display for SizeSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SizeSource::Ladder => "ladder",
            SizeSource::Search => "search",
            SizeSource::Spread => "spread",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumConfig {
    pub search: SearchConfig,
    /// Inclusive range of sizes to search for; defaults to every size.
    pub targets: Option<(usize, usize)>,
}

impl SpectrumConfig {
    pub fn new(search: SearchConfig) -> Self {
        SpectrumConfig { search, targets: None }
    }
}

#[derive(Clone, Debug)]
pub struct Achieved {
    pub source: SizeSource,
    pub certificate: Certificate,
    /// Time spent on the search or construction that produced it.
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct SpectrumReport {
    pub q: u32,
    pub achieved: BTreeMap<usize, Achieved>,
    /// Searched for without success.
    pub missed: Vec<usize>,
    /// Excluded up front by the deficiency bounds.
    pub refused: Vec<usize>,
}

impl SpectrumReport {
    pub fn sizes(&self) -> Vec<usize> {
        self.achieved.keys().copied().collect()
    }

    pub fn table(&self) -> String {
        let mut out = format!("q={}\n size | source | seconds\n", self.q);
        for (size, a) in &self.achieved {
            out.push_str(&format!(
                "{size:>5} | {:<6} | {:.3}\n",
                a.source,
                a.elapsed.as_secs_f64()
            ));
        }
        out.push_str(&format!("missed: {:?}\nrefused: {:?}\n", self.missed, self.refused));
        out
    }

    pub fn csv(&self) -> String {
        let mut out = String::from("q,size,status,source,seconds\n");
        let mut rows: Vec<(usize, String)> = self
            .achieved
            .iter()
            .map(|(s, a)| {
                (
                    *s,
                    format!("{},{s},achieved,{},{:.3}", self.q, a.source, a.elapsed.as_secs_f64()),
                )
            })
            .collect();
        rows.extend(self.missed.iter().map(|s| (*s, format!("{},{s},missed,,", self.q))));
        rows.extend(self.refused.iter().map(|s| (*s, format!("{},{s},refused,,", self.q))));
        rows.sort();
        for (_, r) in rows {
            out.push_str(&r);
            out.push('\n');
        }
        out
    }
}

/// Sweeps sizes from q^3 + q^2 + 1 to the spread size. Ladder sizes and the
/// spread size are constructed; other sizes are searched for, starting from
/// the nearest size already certified. Every maximal spread the search passes
/// through also counts, after an independent maximality check.
pub fn spectrum_scan(geom: &Geometry, cfg: &SpectrumConfig) -> Result<SpectrumReport> {
    let q = geom.q();
    let row = bounds(q)?;
    let mut achieved = BTreeMap::new();
    let mut spreads: BTreeMap<usize, PartialSpread> = BTreeMap::new();

    let clock = Instant::now();
    let sub = Geometry::new(q, 4)?;
    let seed = embed_spread(geom, &sub, &structured_pg4_seed(&sub), Origin::Hyperplane);
    let h = geom.last_coordinate_hyperplane();
    let mut ladder = cover_holes(geom, &h, &seed)?;
    let mut unused = ChaCha8Rng::seed_from_u64(0);
    loop {
        let s = ladder.spread();
        let cert = Certificate::from_spread(geom, s, Provenance::Ladder(ladder.steps()), None);
        achieved.insert(
            s.len(),
            Achieved {
                source: SizeSource::Ladder,
                certificate: cert,
                elapsed: clock.elapsed(),
            },
        );
        spreads.insert(s.len(), s.clone());
        if ladder.steps() == n_max(q) {
            break;
        }
        let r = ladder
            .next_removal(RemovalOrder::LeastFirst, &mut unused)
            .expect("hyperplane lines remain");
        ladder.ladder_step(&r)?;
    }

    let clock = Instant::now();
    let full = regular_spread(geom);
    achieved.insert(
        full.len(),
        Achieved {
            source: SizeSource::Spread,
            certificate: Certificate::from_spread(geom, &full, Provenance::Spread, None),
            elapsed: clock.elapsed(),
        },
    );
    spreads.insert(full.len(), full);

    let (lo, hi) = cfg.targets.unwrap_or((row.min_size, row.spread_size));
    let mut missed = Vec::new();
    let mut refused = Vec::new();
    for target in lo.max(row.min_size)..=hi.min(row.spread_size) {
        if row.refusal(target).is_some() {
            refused.push(target);
            continue;
        }
        if achieved.contains_key(&target) {
            continue;
        }
        let start = spreads
            .iter()
            .min_by_key(|(s, _)| (s.abs_diff(target), **s))
            .map(|(_, sp)| sp.clone())
            .expect("ladder sizes are always present");
        let search_cfg = cfg.search.with_seed(derive_seed(cfg.search.rng_seed, target as u64));
        let clock = Instant::now();
        let mut fresh: BTreeMap<usize, (PartialSpread, Duration)> = BTreeMap::new();
        let mut observe = |s: &PartialSpread| {
            if !spreads.contains_key(&s.len()) && !fresh.contains_key(&s.len()) {
                fresh.insert(s.len(), (s.clone(), clock.elapsed()));
            }
        };
        let outcome = local_search_resize(geom, &start, target, &search_cfg, &mut observe, None);
        for (size, (s, elapsed)) in fresh {
            // the search guarantees maximality; certify it independently anyway
            if !is_maximal(geom, &s).is_maximal() {
                return Err(Error::Invariant(format!(
                    "search reported a non-maximal spread of size {size}"
                )));
            }
            if let Some(reason) = row.refusal(size) {
                return Err(Error::Invariant(format!(
                    "maximal spread of size {size} contradicts the bounds: {reason}"
                )));
            }
            {
                let cert = Certificate::from_spread(geom, &s, Provenance::Search, Some(search_cfg.rng_seed));
                achieved.insert(
                    size,
                    Achieved {
                        source: SizeSource::Search,
                        certificate: cert,
                        elapsed,
                    },
                );
                spreads.insert(size, s);
            }
        }
        if outcome.is_err() && !achieved.contains_key(&target) {
            missed.push(target);
        }
    }
    Ok(SpectrumReport {
        q,
        achieved,
        missed,
        refused,
    })
}
