//! Hyperplane-based construction of maximal partial spreads in PG(5,q).
//!
//! Start from a partial spread `F` of size q^3 + 1 inside a hyperplane `H`,
//! which leaves q^2 holes in `H`. One line off `H` through each hole gives a
//! spread of size q^3 + q^2 + 1 covering `H`; since every line meets `H`, it is
//! maximal. Each ladder step then trades one line of `F` for q + 1 lines off
//! `H` through its points, keeping `H` covered and growing the size by q.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cert::{Certificate, Provenance};
use crate::error::{Error, Result};
use crate::projgeom::{Geometry, Hyperplane, Line, LineMeet, PointId};
use crate::spread::{hyperplane_saturated, is_maximal, Origin, PartialSpread, Verdict};

/// Number of ladder steps available for order `q`: `floor((q^3 - q^2)/(q + 1))`.
pub fn n_max(q: u32) -> usize {
    let q = q as usize;
    (q * q * q - q * q) / (q + 1)
}

fn cube(q: u32) -> usize {
    (q as usize).pow(3)
}

/// Finds a line through `x` that is not in `h` and is skew to every line of
/// `avoid`.
///
/// `avoid` must have fewer than q^3 members, none in `h`, none through `x`,
/// and no two meeting off `h`; under those conditions such a line always
/// exists. Candidates are the lines `x P` for `P` off `h`, taken in order of
/// their least off-hyperplane point.
pub fn lemma_line(geom: &Geometry, h: &Hyperplane, x: PointId, avoid: &[Line]) -> Result<Line> {
    let q = geom.q();
    if x as usize >= geom.point_count() {
        return Err(Error::PointOutOfRange(x));
    }
    if !h.contains(x) {
        return Err(Error::LemmaPrecondition(format!("point {x} is not on the hyperplane")));
    }
    if avoid.len() >= cube(q) {
        return Err(Error::LemmaPrecondition(format!(
            "{} lines to avoid, the bound is fewer than q^3 = {}",
            avoid.len(),
            cube(q)
        )));
    }
    let mut blocked = vec![false; geom.point_count()];
    for line in avoid {
        match h.meet(line)? {
            LineMeet::Contained => {
                return Err(Error::LemmaPrecondition(format!(
                    "line {:?} lies in the hyperplane",
                    line.points()
                )))
            }
            LineMeet::Point(_) => {}
        }
        if line.contains(x) {
            return Err(Error::LemmaPrecondition(format!(
                "line {:?} passes through {x}",
                line.points()
            )));
        }
        for &p in line.points().iter().filter(|&&p| !h.contains(p)) {
            if blocked[p as usize] {
                return Err(Error::LemmaPrecondition(format!(
                    "two lines to avoid meet off the hyperplane at {p}"
                )));
            }
            blocked[p as usize] = true;
        }
    }
    let mut visited = vec![false; geom.point_count()];
    let mut buf = Vec::with_capacity(q as usize + 1);
    for p in 0..geom.point_count() as PointId {
        if h.contains(p) || visited[p as usize] {
            continue;
        }
        geom.span_into(x, p, &mut buf);
        for &r in &buf {
            visited[r as usize] = true;
        }
        if buf.iter().all(|&r| !blocked[r as usize]) {
            debug_assert_eq!(buf.iter().filter(|&&r| h.contains(r)).count(), 1);
            return Ok(Line::from_sorted(buf));
        }
    }
    Err(Error::LemmaExhausted(x))
}

/// How the next hyperplane line to replace is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RemovalOrder {
    /// Least remaining hyperplane line (lexicographic point list).
    #[default]
    LeastFirst,
    /// Uniformly random remaining hyperplane line.
    Random,
}

/// A spread climbing the size ladder q^3 + q^2 + kq + 1.
#[derive(Clone, Debug)]
pub struct LadderState<'g> {
    geom: &'g Geometry,
    hyperplane: Hyperplane,
    spread: PartialSpread,
    steps: usize,
    removed: Vec<Line>,
    external_count: usize,
}

impl<'g> LadderState<'g> {
    pub fn spread(&self) -> &PartialSpread {
        &self.spread
    }

    pub fn into_spread(self) -> PartialSpread {
        self.spread
    }

    pub fn hyperplane(&self) -> &Hyperplane {
        &self.hyperplane
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn removed(&self) -> &[Line] {
        &self.removed
    }

    pub fn external_count(&self) -> usize {
        self.external_count
    }

    /// `q^3 + q^2 + k*q + 1` for `k` completed steps.
    pub fn expected_size(&self) -> usize {
        let q = self.geom.q() as usize;
        q * q * q + q * q + self.steps * q + 1
    }

    fn externals(&self) -> Vec<Line> {
        self.spread.lines_with_origin(Origin::External).cloned().collect()
    }

    /// Adds a line off the hyperplane through `x`, keeping the Lemma's budget.
    fn cover_point(&mut self, x: PointId) -> Result<()> {
        let budget = cube(self.geom.q());
        if self.external_count >= budget {
            return Err(Error::Invariant(format!(
                "{} external lines before a lemma call, need fewer than {budget}",
                self.external_count
            )));
        }
        let avoid = self.externals();
        let line = lemma_line(self.geom, &self.hyperplane, x, &avoid)?;
        // full screen against every member, not only the external ones
        self.spread.insert(line, Origin::External)?;
        self.external_count += 1;
        Ok(())
    }

    /// Next hyperplane line to replace, if any remain.
    pub fn next_removal(&self, order: RemovalOrder, rng: &mut impl Rng) -> Option<Line> {
        let mut resident: Vec<&Line> = self.spread.lines_with_origin(Origin::Hyperplane).collect();
        match order {
            RemovalOrder::LeastFirst => resident.into_iter().min().cloned(),
            RemovalOrder::Random if resident.is_empty() => None,
            RemovalOrder::Random => {
                resident.sort();
                Some(resident[rng.gen_range(0..resident.len())].clone())
            }
        }
    }

    /// Replaces hyperplane line `r` by q + 1 lines off the hyperplane through its points.
    pub fn ladder_step(&mut self, r: &Line) -> Result<()> {
        let q = self.geom.q() as usize;
        let budget = cube(self.geom.q());
        if self.external_count + q + 1 > budget {
            return Err(Error::LadderPrecondition(format!(
                "{} external lines plus {} more exceeds q^3 = {budget}",
                self.external_count,
                q + 1
            )));
        }
        match self.spread.lines().iter().position(|l| l == r) {
            Some(i) if self.spread.origins()[i] == Origin::Hyperplane => {}
            _ => {
                return Err(Error::LadderPrecondition(format!(
                    "line {:?} is not a hyperplane line of the spread",
                    r.points()
                )))
            }
        }
        self.spread.remove_line(r);
        for &x in r.points() {
            self.cover_point(x)?;
        }
        self.steps += 1;
        self.removed.push(r.clone());
        self.check()
    }

    /// Size formula, hyperplane saturation and maximality, checked independently.
    pub fn check(&self) -> Result<()> {
        if self.spread.len() != self.expected_size() {
            return Err(Error::Invariant(format!(
                "size {} after {} steps, expected {}",
                self.spread.len(),
                self.steps,
                self.expected_size()
            )));
        }
        if !hyperplane_saturated(&self.spread, &self.hyperplane) {
            return Err(Error::Invariant("hyperplane not fully covered".into()));
        }
        if let Verdict::Extendable(w) = is_maximal(self.geom, &self.spread) {
            return Err(Error::Invariant(format!(
                "saturated spread extendable by {:?}",
                w.points()
            )));
        }
        Ok(())
    }
}

/// Extends a size-(q^3 + 1) partial spread of hyperplane `h` (q^2 holes in
/// `h`) by one line off `h` through each hole.
pub fn cover_holes<'g>(geom: &'g Geometry, h: &Hyperplane, seed: &PartialSpread) -> Result<LadderState<'g>> {
    let q = geom.q() as usize;
    if geom.dim() != 5 {
        return Err(Error::LadderPrecondition(format!(
            "construction needs PG(5,q), got N={}",
            geom.dim()
        )));
    }
    if seed.len() != q * q * q + 1 {
        return Err(Error::LadderPrecondition(format!(
            "seed has {} lines, expected q^3+1 = {}",
            seed.len(),
            q * q * q + 1
        )));
    }
    if let Some(l) = seed.lines().iter().find(|l| !h.contains_line(l)) {
        return Err(Error::LadderPrecondition(format!(
            "seed line {:?} is not in the hyperplane",
            l.points()
        )));
    }
    let spread = PartialSpread::from_lines(geom, seed.lines().iter().cloned(), Origin::Hyperplane)?;
    let holes = spread.holes(Some(h));
    if holes.len() != q * q {
        return Err(Error::LadderPrecondition(format!(
            "seed leaves {} holes in the hyperplane, expected {}",
            holes.len(),
            q * q
        )));
    }
    let mut state = LadderState {
        geom,
        hyperplane: h.clone(),
        spread,
        steps: 0,
        removed: Vec::new(),
        external_count: 0,
    };
    for x in holes {
        state.cover_point(x)?;
    }
    state.check()?;
    Ok(state)
}

/// Runs `cover_holes` then `k` ladder steps.
pub fn run_ladder<'g>(
    geom: &'g Geometry,
    k: usize,
    seed: &PartialSpread,
    order: RemovalOrder,
    rng: &mut impl Rng,
) -> Result<LadderState<'g>> {
    let max = n_max(geom.q());
    if k > max {
        return Err(Error::LadderRange { k, max, q: geom.q() });
    }
    let h = geom.last_coordinate_hyperplane();
    let mut state = cover_holes(geom, &h, seed)?;
    for _ in 0..k {
        let r = state
            .next_removal(order, rng)
            .ok_or_else(|| Error::Invariant("no hyperplane line left to replace".into()))?;
        state.ladder_step(&r)?;
    }
    Ok(state)
}

/// Verified certificate of size q^3 + q^2 + kq + 1, built deterministically.
/// `seed` lives in the hyperplane `x_5 = 0`.
pub fn build_ladder(geom: &Geometry, k: usize, seed: &PartialSpread) -> Result<Certificate> {
    let mut unused = ChaCha8Rng::seed_from_u64(0);
    let state = run_ladder(geom, k, seed, RemovalOrder::LeastFirst, &mut unused)?;
    Ok(Certificate::from_spread(
        geom,
        state.spread(),
        Provenance::Ladder(k),
        None,
    ))
}
