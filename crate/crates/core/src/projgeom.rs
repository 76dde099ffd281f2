//! Combinatorial model of PG(N,q).
//!
//! Points are normalized coordinate vectors (first nonzero entry is 1) and are
//! numbered in lexicographic order of those vectors. A [`Line`] is identified
//! by its sorted list of `q + 1` point ids.
//!
//! For small spaces the full line list is materialized together with a
//! point-to-line incidence index; for PG(5,7) and larger, lines are generated
//! on demand from [`Geometry::line_span`] and [`Geometry::lines_through`].

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

pub type PointId = u32;

const NO_POINT: PointId = PointId::MAX;
const MAX_WIDTH: usize = 6;
/// Spaces with more lines than this are not materialized.
const MATERIALIZE_LIMIT: u64 = 3_000_000;

/// Closed-form sizes of PG(N,q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    pub points: u64,
    pub lines: u64,
    /// Size of a line spread; only defined for odd N.
    pub spread_size: Option<u64>,
}

/// Gaussian-binomial counts for PG(N,q).
pub fn counts(q: u64, n: u32) -> Counts {
    let points = (q.pow(n + 1) - 1) / (q - 1);
    let lines = (q.pow(n + 1) - 1) * (q.pow(n) - 1) / ((q * q - 1) * (q - 1));
    let spread_size = (n % 2 == 1).then(|| (q.pow(n + 1) - 1) / (q * q - 1));
    Counts {
        points,
        lines,
        spread_size,
    }
}

/// A line of PG(N,q) as its strictly increasing point ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Line(Vec<PointId>);

impl Line {
    /// Wraps a sorted, duplicate-free list of collinear point ids. Callers are
    /// responsible for collinearity; use [`Geometry::line_span`] otherwise.
    pub fn from_sorted(points: Vec<PointId>) -> Self {
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        Line(points)
    }

    pub fn points(&self) -> &[PointId] {
        &self.0
    }

    /// The two smallest point ids, used as the serialized basis.
    pub fn basis(&self) -> (PointId, PointId) {
        (self.0[0], self.0[1])
    }

    pub fn contains(&self, p: PointId) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    /// Distinct lines of a projective space meet in at most one point, so
    /// disjointness of the point sets is exactly skewness.
    pub fn is_skew(&self, other: &Line) -> bool {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn common_point(&self, other: &Line) -> Option<PointId> {
        self.0.iter().copied().find(|&p| other.contains(p))
    }
}

pub fn lines_skew(l1: &Line, l2: &Line) -> bool {
    l1.is_skew(l2)
}

#[derive(Clone, Debug)]
struct LineTable {
    /// `len * (q + 1)` point ids, lines in lexicographic order.
    points: Vec<PointId>,
    /// CSR incidence: lines through point `p` are `through[offsets[p]..offsets[p+1]]`.
    offsets: Vec<u32>,
    through: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct Geometry {
    field: Field,
    dim: usize,
    coords: Vec<Elem>,
    /// Base-q code of a normalized vector -> point id.
    index: Vec<PointId>,
    /// Base-q code of a normalized N-vector -> pencil class.
    pencil_index: Vec<u32>,
    pencil_size: usize,
    lines: Option<LineTable>,
}

fn is_normalized(v: &[Elem]) -> bool {
    v.iter().find(|&&c| c != 0) == Some(&1)
}

impl Geometry {
    pub fn new(q: u32, dim: usize) -> Result<Self> {
        let field = Field::new(q)?;
        if !(2..=5).contains(&dim) {
            return Err(Error::UnsupportedDimension(dim));
        }
        let width = dim + 1;
        let qs = q as usize;
        let total = qs.pow(width as u32);
        let mut coords = Vec::new();
        let mut index = vec![NO_POINT; total];
        let mut buf = [0u8; MAX_WIDTH];
        let mut next: PointId = 0;
        for (code, slot) in index.iter_mut().enumerate() {
            decode(code, qs, &mut buf[..width]);
            if is_normalized(&buf[..width]) {
                *slot = next;
                next += 1;
                coords.extend_from_slice(&buf[..width]);
            }
        }
        let sub_total = qs.pow(dim as u32);
        let mut pencil_index = vec![u32::MAX; sub_total];
        let mut pencil_size = 0usize;
        for (code, slot) in pencil_index.iter_mut().enumerate() {
            decode(code, qs, &mut buf[..dim]);
            if is_normalized(&buf[..dim]) {
                *slot = pencil_size as u32;
                pencil_size += 1;
            }
        }
        let mut geom = Geometry {
            field,
            dim,
            coords,
            index,
            pencil_index,
            pencil_size,
            lines: None,
        };
        debug_assert_eq!(geom.point_count() as u64, counts(q as u64, dim as u32).points);
        if counts(q as u64, dim as u32).lines <= MATERIALIZE_LIMIT {
            geom.lines = Some(geom.build_line_table());
        }
        Ok(geom)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Projective dimension N.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of homogeneous coordinates, N + 1.
    pub fn width(&self) -> usize {
        self.dim + 1
    }

    pub fn point_count(&self) -> usize {
        self.coords.len() / self.width()
    }

    pub fn line_count(&self) -> u64 {
        counts(self.q() as u64, self.dim as u32).lines
    }

    /// Number of lines through a point, `(q^N - 1)/(q - 1)`.
    pub fn pencil_size(&self) -> usize {
        self.pencil_size
    }

    pub fn counts(&self) -> Counts {
        counts(self.q() as u64, self.dim as u32)
    }

    pub fn is_materialized(&self) -> bool {
        self.lines.is_some()
    }

    #[inline]
    pub fn coords(&self, p: PointId) -> &[Elem] {
        let w = self.width();
        &self.coords[p as usize * w..(p as usize + 1) * w]
    }

    fn code(&self, v: &[Elem]) -> usize {
        let q = self.q() as usize;
        v.iter().fold(0usize, |acc, &c| acc * q + c as usize)
    }

    /// Scales `v` so its first nonzero coordinate is 1.
    pub fn normalize(&self, v: &mut [Elem]) -> Result<()> {
        let lead = v.iter().copied().find(|&c| c != 0).ok_or(Error::ZeroVector)?;
        let s = self.field.inv(lead);
        for c in v.iter_mut() {
            *c = self.field.mul(*c, s);
        }
        Ok(())
    }

    /// Point id of an arbitrary nonzero vector, normalizing it first.
    pub fn point_id(&self, v: &[Elem]) -> Result<PointId> {
        if v.len() != self.width() {
            return Err(Error::WrongArity {
                got: v.len(),
                expected: self.width(),
            });
        }
        let q = self.q();
        if let Some(&bad) = v.iter().find(|&&c| c as u32 >= q) {
            return Err(Error::ElementOutOfRange { elem: bad as u32, q });
        }
        let mut buf = [0u8; MAX_WIDTH];
        let buf = &mut buf[..v.len()];
        buf.copy_from_slice(v);
        self.normalize(buf)?;
        Ok(self.index[self.code(buf)])
    }

    fn check_point(&self, p: PointId) -> Result<()> {
        if (p as usize) < self.point_count() {
            Ok(())
        } else {
            Err(Error::PointOutOfRange(p))
        }
    }

    /// The id of the point `a + lambda * b` (with `lambda != 0`).
    #[inline]
    fn combine(&self, a: &[Elem], b: &[Elem], lambda: Elem) -> PointId {
        let f = &self.field;
        let mut buf = [0u8; MAX_WIDTH];
        let w = a.len();
        let mut lead = 0;
        for i in 0..w {
            let c = f.add(a[i], f.mul(lambda, b[i]));
            buf[i] = c;
            if lead == 0 && c != 0 {
                lead = c;
            }
        }
        let s = f.inv(lead);
        let q = self.q() as usize;
        let mut code = 0usize;
        for &c in &buf[..w] {
            code = code * q + f.mul(c, s) as usize;
        }
        self.index[code]
    }

    /// Writes the sorted points of the line through distinct points `a` and
    /// `b` into `out`. No range checks.
    pub(crate) fn span_into(&self, a: PointId, b: PointId, out: &mut Vec<PointId>) {
        out.clear();
        out.push(a);
        out.push(b);
        let (va, vb) = (self.coords(a), self.coords(b));
        for lambda in 1..self.q() as Elem {
            out.push(self.combine(va, vb, lambda));
        }
        out.sort_unstable();
    }

    pub fn line_span(&self, a: PointId, b: PointId) -> Result<Line> {
        self.check_point(a)?;
        self.check_point(b)?;
        if a == b {
            return Err(Error::SamePoint(a));
        }
        let mut out = Vec::with_capacity(self.q() as usize + 1);
        self.span_into(a, b, &mut out);
        Ok(Line(out))
    }

    /// Index in `0..pencil_size()` of the line `ab` among the lines through `a`.
    /// Projects `b` away from `a` along `a`'s pivot coordinate.
    #[inline]
    pub(crate) fn pencil_class(&self, a: PointId, b: PointId) -> u32 {
        let f = &self.field;
        let (va, vb) = (self.coords(a), self.coords(b));
        let pivot = va.iter().position(|&c| c != 0).unwrap();
        let t = vb[pivot];
        let mut buf = [0u8; MAX_WIDTH];
        let mut n = 0;
        let mut lead = 0;
        for i in 0..va.len() {
            if i == pivot {
                continue;
            }
            let c = f.sub(vb[i], f.mul(t, va[i]));
            buf[n] = c;
            n += 1;
            if lead == 0 && c != 0 {
                lead = c;
            }
        }
        debug_assert!(lead != 0, "pencil_class needs distinct points");
        let s = f.inv(lead);
        let q = self.q() as usize;
        let code = buf[..n].iter().fold(0usize, |acc, &c| acc * q + f.mul(c, s) as usize);
        self.pencil_index[code]
    }

    /// All lines through `p`, sorted.
    pub fn lines_through(&self, p: PointId) -> Vec<Line> {
        if let Some(t) = &self.lines {
            let (lo, hi) = (t.offsets[p as usize] as usize, t.offsets[p as usize + 1] as usize);
            return t.through[lo..hi]
                .iter()
                .map(|&l| self.table_line(t, l as usize))
                .collect();
        }
        let mut seen = vec![false; self.pencil_size];
        let mut out = Vec::with_capacity(self.pencil_size);
        let mut buf = Vec::new();
        for b in 0..self.point_count() as PointId {
            if b == p {
                continue;
            }
            let c = self.pencil_class(p, b) as usize;
            if !seen[c] {
                seen[c] = true;
                self.span_into(p, b, &mut buf);
                out.push(Line(buf.clone()));
            }
        }
        out.sort_unstable();
        out
    }

    fn table_line(&self, t: &LineTable, i: usize) -> Line {
        let k = self.q() as usize + 1;
        Line(t.points[i * k..(i + 1) * k].to_vec())
    }

    /// Calls `f` on the sorted points of every line whose smallest point is `a`,
    /// in increasing order of the second point.
    fn for_lines_from(&self, a: PointId, stamp: &mut [u32], tag: u32, f: &mut impl FnMut(&[PointId])) {
        // classes containing a point below `a` belong to an earlier line
        for b in 0..a {
            stamp[self.pencil_class(a, b) as usize] = tag;
        }
        let mut buf = Vec::with_capacity(self.q() as usize + 1);
        for b in a + 1..self.point_count() as PointId {
            let c = self.pencil_class(a, b) as usize;
            if stamp[c] != tag {
                stamp[c] = tag;
                self.span_into(a, b, &mut buf);
                f(&buf);
            }
        }
    }

    /// Visits every line in lexicographic order of its point list.
    pub fn for_each_line(&self, mut f: impl FnMut(&[PointId])) {
        if let Some(t) = &self.lines {
            t.points.chunks_exact(self.q() as usize + 1).for_each(f);
            return;
        }
        let mut stamp = vec![u32::MAX; self.pencil_size];
        for a in 0..self.point_count() as PointId {
            self.for_lines_from(a, &mut stamp, a, &mut f);
        }
    }

    /// All lines, materializing them if the space is not already materialized.
    pub fn lines(&self) -> Vec<Line> {
        let mut out = Vec::new();
        self.for_each_line(|pts| out.push(Line(pts.to_vec())));
        out
    }

    /// Flat view of the materialized line table, stride `q + 1`.
    pub(crate) fn line_table(&self) -> Option<&[PointId]> {
        self.lines.as_ref().map(|t| t.points.as_slice())
    }

    fn build_line_table(&self) -> LineTable {
        let n = self.point_count();
        let k = self.q() as usize + 1;
        let mut points = Vec::with_capacity(self.line_count() as usize * k);
        let mut stamp = vec![u32::MAX; self.pencil_size];
        for a in 0..n as PointId {
            self.for_lines_from(a, &mut stamp, a, &mut |pts| points.extend_from_slice(pts));
        }
        let mut degree = vec![0u32; n + 1];
        for &p in &points {
            degree[p as usize + 1] += 1;
        }
        let mut offsets = degree;
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut through = vec![0u32; points.len()];
        for (i, line) in points.chunks_exact(k).enumerate() {
            for &p in line {
                through[fill[p as usize] as usize] = i as u32;
                fill[p as usize] += 1;
            }
        }
        LineTable {
            points,
            offsets,
            through,
        }
    }

    /// Points of the hyperplane `sum c_i x_i = 0`.
    pub fn hyperplane(&self, covector: &[Elem]) -> Result<Hyperplane> {
        if covector.len() != self.width() {
            return Err(Error::WrongArity {
                got: covector.len(),
                expected: self.width(),
            });
        }
        if let Some(&bad) = covector.iter().find(|&&c| c as u32 >= self.q()) {
            return Err(Error::ElementOutOfRange {
                elem: bad as u32,
                q: self.q(),
            });
        }
        if covector.iter().all(|&c| c == 0) {
            return Err(Error::ZeroVector);
        }
        let f = &self.field;
        let member: Vec<bool> = (0..self.point_count() as PointId)
            .map(|p| {
                self.coords(p)
                    .iter()
                    .zip(covector)
                    .fold(0u8, |acc, (&x, &c)| f.add(acc, f.mul(x, c)))
                    == 0
            })
            .collect();
        let size = member.iter().filter(|&&m| m).count();
        Ok(Hyperplane {
            covector: covector.to_vec(),
            member,
            size,
        })
    }

    /// The hyperplane `x_N = 0`, into which PG(N-1,q) embeds by appending a zero.
    pub fn last_coordinate_hyperplane(&self) -> Hyperplane {
        let mut c = vec![0; self.width()];
        c[self.dim] = 1;
        self.hyperplane(&c).expect("unit covector is valid")
    }

    /// Image of point `p` of `sub` = PG(N-1,q) under `x -> (x, 0)`.
    pub fn embed_point(&self, sub: &Geometry, p: PointId) -> PointId {
        debug_assert_eq!(sub.width() + 1, self.width());
        let mut buf = [0u8; MAX_WIDTH];
        buf[..sub.width()].copy_from_slice(sub.coords(p));
        self.index[self.code(&buf[..self.width()])]
    }

    pub fn embed_line(&self, sub: &Geometry, line: &Line) -> Line {
        let mut pts: Vec<_> = line.points().iter().map(|&p| self.embed_point(sub, p)).collect();
        pts.sort_unstable();
        Line(pts)
    }
}

fn decode(mut code: usize, q: usize, out: &mut [Elem]) {
    for slot in out.iter_mut().rev() {
        *slot = (code % q) as Elem;
        code /= q;
    }
}

/// How a line sits relative to a hyperplane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineMeet {
    Contained,
    Point(PointId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    covector: Vec<Elem>,
    member: Vec<bool>,
    size: usize,
}

impl Hyperplane {
    pub fn covector(&self) -> &[Elem] {
        &self.covector
    }

    #[inline]
    pub fn contains(&self, p: PointId) -> bool {
        self.member[p as usize]
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn points(&self) -> Vec<PointId> {
        (0..self.member.len() as PointId)
            .filter(|&p| self.member[p as usize])
            .collect()
    }

    pub fn contains_line(&self, line: &Line) -> bool {
        line.points().iter().all(|&p| self.contains(p))
    }

    pub fn meet(&self, line: &Line) -> Result<LineMeet> {
        let inside: Vec<_> = line.points().iter().copied().filter(|&p| self.contains(p)).collect();
        match inside.len() {
            1 => Ok(LineMeet::Point(inside[0])),
            n if n == line.points().len() => Ok(LineMeet::Contained),
            n => Err(Error::Invariant(format!("line meets hyperplane in {n} points"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(g: &Geometry, v: &[u8]) -> PointId {
        g.point_id(v).unwrap()
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(
            counts(2, 5),
            Counts {
                points: 63,
                lines: 651,
                spread_size: Some(21)
            }
        );
        assert_eq!(counts(3, 5).lines, 11011);
        assert_eq!(counts(5, 5).spread_size, Some(651));
        assert_eq!(counts(7, 5).spread_size, Some(2451));
        assert_eq!(counts(2, 4).points, 31);
        assert_eq!(counts(2, 4).spread_size, None);
    }

    #[test]
    fn pair_counting_oracle_matches_line_count() {
        // lines = C(points, 2) / C(q + 1, 2)
        for (q, n) in [(2u64, 5u32), (3, 5), (4, 3), (5, 3), (3, 2)] {
            let c = counts(q, n);
            assert_eq!(c.lines, c.points * (c.points - 1) / ((q + 1) * q), "q={q} n={n}");
        }
    }

    #[test]
    fn context_sizes() {
        let g = Geometry::new(2, 5).unwrap();
        assert_eq!(g.point_count(), 63);
        assert_eq!(g.lines().len(), 651);
        let g = Geometry::new(3, 5).unwrap();
        assert_eq!(g.point_count(), 364);
        assert_eq!(g.lines().len(), 11011);
        assert_eq!(Geometry::new(2, 4).unwrap().point_count(), 31);
        assert!(matches!(Geometry::new(6, 5), Err(Error::UnsupportedOrder(6))));
        assert!(matches!(Geometry::new(2, 6), Err(Error::UnsupportedDimension(6))));
        assert!(matches!(Geometry::new(2, 1), Err(Error::UnsupportedDimension(1))));
    }

    #[test]
    fn points_are_normalized_and_lexicographic() {
        let g = Geometry::new(3, 3).unwrap();
        for p in 0..g.point_count() as PointId {
            assert!(is_normalized(g.coords(p)));
            assert_eq!(g.point_id(g.coords(p)).unwrap(), p);
            if p > 0 {
                assert!(g.coords(p - 1) < g.coords(p));
            }
        }
    }

    #[test]
    fn normalize_examples() {
        let g3 = Geometry::new(3, 5).unwrap();
        let mut v = [0, 2, 1, 0, 0, 0];
        g3.normalize(&mut v).unwrap();
        assert_eq!(v, [0, 1, 2, 0, 0, 0]);
        let g4 = Geometry::new(4, 5).unwrap();
        let mut v = [2, 2, 0, 0, 0, 0];
        g4.normalize(&mut v).unwrap();
        assert_eq!(v, [1, 1, 0, 0, 0, 0]);
        let mut z = [0u8; 6];
        assert_eq!(g3.normalize(&mut z), Err(Error::ZeroVector));
        assert_eq!(g3.point_id(&[0, 0, 0, 0, 0, 0]), Err(Error::ZeroVector));
        assert!(matches!(g3.point_id(&[1, 0]), Err(Error::WrongArity { .. })));
        let g2 = Geometry::new(2, 5).unwrap();
        for p in 0..63 {
            let v = g2.coords(p).to_vec();
            let mut w = v.clone();
            g2.normalize(&mut w).unwrap();
            assert_eq!(v, w);
        }
    }

    #[test]
    fn span_examples() {
        let g2 = Geometry::new(2, 5).unwrap();
        let a = pt(&g2, &[1, 0, 0, 0, 0, 0]);
        let b = pt(&g2, &[0, 1, 0, 0, 0, 0]);
        let l = g2.line_span(a, b).unwrap();
        let mut expect = [a, b, pt(&g2, &[1, 1, 0, 0, 0, 0])];
        expect.sort();
        assert_eq!(l.points(), &expect[..]);
        assert_eq!(g2.line_span(b, a).unwrap(), l);
        assert_eq!(g2.line_span(a, a), Err(Error::SamePoint(a)));

        let g3 = Geometry::new(3, 5).unwrap();
        let a = pt(&g3, &[1, 0, 0, 0, 0, 0]);
        let b = pt(&g3, &[0, 1, 0, 0, 0, 0]);
        let l = g3.line_span(a, b).unwrap();
        let mut expect = [a, b, pt(&g3, &[1, 1, 0, 0, 0, 0]), pt(&g3, &[1, 2, 0, 0, 0, 0])];
        expect.sort();
        assert_eq!(l.points(), &expect[..]);
    }

    #[test]
    fn skewness_examples() {
        let g = Geometry::new(2, 5).unwrap();
        let e = |i: usize| {
            let mut v = [0u8; 6];
            v[i] = 1;
            pt(&g, &v)
        };
        let l12 = g.line_span(e(0), e(1)).unwrap();
        let l34 = g.line_span(e(2), e(3)).unwrap();
        let l13 = g.line_span(e(0), e(2)).unwrap();
        assert!(lines_skew(&l12, &l34));
        assert!(!lines_skew(&l12, &l12));
        assert!(!lines_skew(&l12, &l13));
        assert_eq!(l12.common_point(&l13), Some(e(0)));
    }

    #[test]
    fn line_closure_and_point_degree() {
        for q in [2, 3] {
            let g = Geometry::new(q, if q == 2 { 5 } else { 3 }).unwrap();
            for line in g.lines() {
                assert_eq!(line.points().len(), q as usize + 1);
                for &x in line.points() {
                    for &y in line.points() {
                        if x != y {
                            assert_eq!(g.line_span(x, y).unwrap(), line);
                        }
                    }
                }
            }
        }
        let g = Geometry::new(2, 5).unwrap();
        for p in 0..63 {
            assert_eq!(g.lines_through(p).len(), 31);
        }
    }

    #[test]
    fn lazy_and_materialized_enumerations_agree() {
        let g = Geometry::new(3, 4).unwrap();
        assert!(g.is_materialized());
        let mut lazy = g.clone();
        lazy.lines = None;
        assert_eq!(lazy.lines(), g.lines());
        for p in [0, 17, 120] {
            assert_eq!(lazy.lines_through(p), g.lines_through(p));
        }
    }

    #[test]
    fn pencil_classes_identify_lines() {
        let g = Geometry::new(3, 3).unwrap();
        for a in 0..g.point_count() as PointId {
            let mut by_class = vec![None; g.pencil_size()];
            for b in 0..g.point_count() as PointId {
                if a == b {
                    continue;
                }
                let line = g.line_span(a, b).unwrap();
                let slot = &mut by_class[g.pencil_class(a, b) as usize];
                match slot {
                    None => *slot = Some(line),
                    Some(l) => assert_eq!(*l, line),
                }
            }
            assert!(by_class.iter().all(|s| s.is_some()));
        }
    }

    #[test]
    fn hyperplane_examples() {
        let g2 = Geometry::new(2, 5).unwrap();
        let h = g2.hyperplane(&[0, 0, 0, 0, 0, 1]).unwrap();
        assert_eq!(h.len(), 31);
        let g3 = Geometry::new(3, 5).unwrap();
        assert_eq!(g3.last_coordinate_hyperplane().len(), 121);
        assert_eq!(g3.hyperplane(&[0; 6]), Err(Error::ZeroVector));
        // every line meets every hyperplane, in one point unless contained
        for q in [2, 3] {
            let g = Geometry::new(q, 5).unwrap();
            let hs = [
                g.hyperplane(&[0, 0, 0, 0, 0, 1]).unwrap(),
                g.hyperplane(&[1, 1, 0, 1, 0, 1]).unwrap(),
            ];
            for h in &hs {
                let mut contained = 0;
                g.for_each_line(|pts| {
                    let n = pts.iter().filter(|&&p| h.contains(p)).count();
                    assert!(n == 1 || n == q as usize + 1);
                    if n > 1 {
                        contained += 1;
                    }
                });
                assert_eq!(contained as u64, counts(q as u64, 4).lines);
            }
        }
    }

    #[test]
    fn embedding_lands_in_last_hyperplane() {
        let g4 = Geometry::new(3, 4).unwrap();
        let g5 = Geometry::new(3, 5).unwrap();
        let h = g5.last_coordinate_hyperplane();
        let l = g4.line_span(3, 40).unwrap();
        let e = g5.embed_line(&g4, &l);
        assert!(h.contains_line(&e));
        assert_eq!(h.meet(&e), Ok(LineMeet::Contained));
        assert_eq!(g5.line_span(e.points()[0], e.points()[1]).unwrap(), e);
    }
}
