//! Partial line spreads, their holes, and the maximality verifier.

use crate::error::{Error, Result};
use crate::projgeom::{Geometry, Hyperplane, Line, PointId};
use crate::search::bounds;

/// Where a member line came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Contained in the construction hyperplane.
    Hyperplane,
    /// Meets the construction hyperplane in a single point.
    External,
    /// Added by a search move.
    Search,
}

/// A set of pairwise skew lines with a dense covered-point map.
#[derive(Clone, Debug)]
pub struct PartialSpread {
    q: u32,
    lines: Vec<Line>,
    origins: Vec<Origin>,
    covered: Vec<bool>,
    covered_count: usize,
}

impl PartialSpread {
    pub fn new(geom: &Geometry) -> Self {
        PartialSpread {
            q: geom.q(),
            lines: Vec::new(),
            origins: Vec::new(),
            covered: vec![false; geom.point_count()],
            covered_count: 0,
        }
    }

    pub fn from_lines(geom: &Geometry, lines: impl IntoIterator<Item = Line>, origin: Origin) -> Result<Self> {
        let mut s = Self::new(geom);
        for l in lines {
            s.insert(l, origin)?;
        }
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn point_count(&self) -> usize {
        self.covered.len()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn origins(&self) -> &[Origin] {
        &self.origins
    }

    pub fn lines_with_origin(&self, origin: Origin) -> impl Iterator<Item = &Line> {
        self.lines
            .iter()
            .zip(&self.origins)
            .filter(move |(_, &o)| o == origin)
            .map(|(l, _)| l)
    }

    #[inline]
    pub fn is_covered(&self, p: PointId) -> bool {
        self.covered[p as usize]
    }

    pub fn covered_count(&self) -> usize {
        self.covered_count
    }

    pub(crate) fn covered_mask(&self) -> &[bool] {
        &self.covered
    }

    /// First covered point of `points`, if any.
    pub fn blocking_point(&self, points: &[PointId]) -> Option<PointId> {
        points.iter().copied().find(|&p| self.covered[p as usize])
    }

    pub fn can_insert(&self, points: &[PointId]) -> bool {
        points.iter().all(|&p| !self.covered[p as usize])
    }

    pub fn insert(&mut self, line: Line, origin: Origin) -> Result<()> {
        if let Some(&bad) = line.points().iter().find(|&&p| p as usize >= self.covered.len()) {
            return Err(Error::PointOutOfRange(bad));
        }
        if let Some(point) = self.blocking_point(line.points()) {
            return Err(Error::Conflict { point });
        }
        for &p in line.points() {
            self.covered[p as usize] = true;
        }
        self.covered_count += line.points().len();
        self.lines.push(line);
        self.origins.push(origin);
        Ok(())
    }

    /// Removes the lines at `indices` and rebuilds the covered map.
    pub fn remove_indices(&mut self, indices: &[usize]) {
        let mut drop = vec![false; self.lines.len()];
        for &i in indices {
            drop[i] = true;
        }
        let mut keep = drop.iter().map(|d| !d);
        self.origins.retain(|_| keep.next().unwrap());
        let mut keep = drop.iter().map(|d| !d);
        self.lines.retain(|_| keep.next().unwrap());
        self.rebuild_covered();
    }

    /// Removes `line` if present, returning its origin.
    pub fn remove_line(&mut self, line: &Line) -> Option<Origin> {
        let i = self.lines.iter().position(|l| l == line)?;
        let origin = self.origins[i];
        self.remove_indices(&[i]);
        Some(origin)
    }

    fn rebuild_covered(&mut self) {
        self.covered.iter_mut().for_each(|c| *c = false);
        for l in &self.lines {
            for &p in l.points() {
                self.covered[p as usize] = true;
            }
        }
        self.covered_count = self.lines.len() * (self.q as usize + 1);
    }

    /// Re-checks the covered map against the line list.
    pub fn check_invariants(&self) -> Result<()> {
        let mut seen = vec![false; self.covered.len()];
        for l in &self.lines {
            for &p in l.points() {
                if seen[p as usize] {
                    return Err(Error::Invariant(format!("point {p} lies on two member lines")));
                }
                seen[p as usize] = true;
            }
        }
        let actual = seen.iter().filter(|&&c| c).count();
        if seen != self.covered || actual != self.covered_count || actual != self.lines.len() * (self.q as usize + 1) {
            return Err(Error::Invariant("covered map out of sync with the line list".into()));
        }
        Ok(())
    }

    /// Uncovered points, optionally restricted to a hyperplane.
    pub fn holes(&self, restrict: Option<&Hyperplane>) -> Vec<PointId> {
        (0..self.covered.len() as PointId)
            .filter(|&p| !self.covered[p as usize] && restrict.is_none_or(|h| h.contains(p)))
            .collect()
    }

    pub fn hole_count(&self) -> usize {
        self.covered.len() - self.covered_count
    }
}

/// Outcome of [`is_maximal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Maximal,
    /// A line inside the hole set: the lexicographically least one.
    Extendable(Line),
}

impl Verdict {
    pub fn is_maximal(&self) -> bool {
        matches!(self, Verdict::Maximal)
    }
}

/// Scans lines inside a hole set, grouped by their smallest point.
///
/// For each hole `a`, the holes `b > a` are bucketed by the line `ab`; a bucket
/// reaching `q` members is a line of holes whose least point is `a`. The
/// bucket's first member is that line's second point. Holes are visited in
/// increasing order, so lines are produced in lexicographic order.
struct HoleLines<'g> {
    geom: &'g Geometry,
    holes: Vec<PointId>,
    count: Vec<u32>,
    first: Vec<PointId>,
    stamp: Vec<u32>,
}

impl<'g> HoleLines<'g> {
    fn new(geom: &'g Geometry, mut holes: Vec<PointId>) -> Self {
        holes.sort_unstable();
        let n = geom.pencil_size();
        HoleLines {
            geom,
            holes,
            count: vec![0; n],
            first: vec![0; n],
            stamp: vec![u32::MAX; n],
        }
    }

    /// Second points of all hole lines whose least point is `holes[i]`, ascending.
    fn lines_from(&mut self, i: usize, out: &mut Vec<PointId>) {
        out.clear();
        let q = self.geom.q();
        let a = self.holes[i];
        let tag = i as u32;
        for &b in &self.holes[i + 1..] {
            let c = self.geom.pencil_class(a, b) as usize;
            if self.stamp[c] != tag {
                self.stamp[c] = tag;
                self.count[c] = 0;
                self.first[c] = b;
            }
            self.count[c] += 1;
            if self.count[c] == q {
                out.push(self.first[c]);
            }
        }
        out.sort_unstable();
    }
}

/// Every line of the space lying entirely inside `holes`, in lexicographic order.
pub fn hole_lines(geom: &Geometry, holes: Vec<PointId>) -> Vec<Line> {
    let mut scan = HoleLines::new(geom, holes);
    let mut seconds = Vec::new();
    let mut out = Vec::new();
    for i in 0..scan.holes.len() {
        scan.lines_from(i, &mut seconds);
        let a = scan.holes[i];
        out.extend(seconds.iter().map(|&b| geom.line_span(a, b).expect("distinct holes")));
    }
    out
}

/// Decides maximality by searching the hole set for a line of holes.
pub fn is_maximal(geom: &Geometry, spread: &PartialSpread) -> Verdict {
    let holes = spread.holes(None);
    if holes.len() < geom.q() as usize + 1 {
        return Verdict::Maximal;
    }
    let mut scan = HoleLines::new(geom, holes);
    let mut seconds = Vec::new();
    for i in 0..scan.holes.len() {
        scan.lines_from(i, &mut seconds);
        if let Some(&b) = seconds.first() {
            let line = geom.line_span(scan.holes[i], b).expect("distinct holes");
            return Verdict::Extendable(line);
        }
    }
    Verdict::Maximal
}

/// True iff every point of `h` is covered.
pub fn hyperplane_saturated(spread: &PartialSpread, h: &Hyperplane) -> bool {
    h.points().iter().all(|&p| spread.is_covered(p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeficiencyReport {
    pub size: usize,
    pub spread_size: usize,
    /// `spread_size - size`; a deficiency in the strict sense only if `maximal`.
    pub delta: usize,
    pub maximal: bool,
    /// Smallest deficiency a maximal non-spread can have, where tabulated.
    pub delta_min: Option<usize>,
    /// False when a maximal spread contradicts the tabulated lower bounds.
    pub within_bounds: bool,
}

/// Deficiency accounting for spreads of PG(N,q) with N odd.
pub fn deficiency(geom: &Geometry, spread: &PartialSpread) -> DeficiencyReport {
    let spread_size = geom.counts().spread_size.expect("deficiency needs odd dimension") as usize;
    let size = spread.len();
    let maximal = is_maximal(geom, spread).is_maximal();
    let row = bounds(geom.q()).ok();
    let delta = spread_size - size;
    let within_bounds = match (&row, maximal) {
        (Some(r), true) if geom.dim() == 5 => delta == 0 || (size >= r.min_size && delta >= r.delta_min),
        _ => true,
    };
    DeficiencyReport {
        size,
        spread_size,
        delta,
        maximal,
        delta_min: row.map(|r| r.delta_min),
        within_bounds,
    }
}
