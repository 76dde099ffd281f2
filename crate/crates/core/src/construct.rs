//! Algebraic constructions used as fixed starting points.
//!
//! * [`regular_spread`]: the Desarguesian line spread of PG(2m-1,q), from the
//!   one-dimensional subspaces of GF(q^2)^m.
//! * [`structured_pg4_seed`]: a maximal partial spread of PG(4,q) of size
//!   q^3 + 1. With coordinates `(u0, u1, y)`, `y` in GF(q^3), the q^3 lines
//!   `{(u, c*(u0 + u1*x))}` for c in GF(q^3) partition the points off the
//!   plane `u = 0`; one more line inside that plane leaves q^2 holes, all in
//!   the plane, and no line fits among them.

use crate::gf::{Elem, Extension};
use crate::projgeom::{Geometry, PointId};
use crate::spread::{Origin, PartialSpread};

fn point_of(geom: &Geometry, v: &[Elem]) -> PointId {
    geom.point_id(v).expect("construction produces nonzero vectors")
}

/// The regular (Desarguesian) line spread. Requires odd N.
pub fn regular_spread(geom: &Geometry) -> PartialSpread {
    let width = geom.width();
    assert!(width.is_multiple_of(2), "line spreads exist only in odd dimension");
    let m = width / 2;
    let ext = Extension::new(geom.field(), 2);
    let x = ext.generator();
    let elems: Vec<Vec<Elem>> = ext.elements().collect();
    let zero = ext.zero();
    let one = ext.one();
    let mut spread = PartialSpread::new(geom);
    // normalized vectors of GF(q^2)^m: leading nonzero coordinate is 1
    let mut idx = vec![0usize; m];
    loop {
        let u: Vec<&Vec<Elem>> = idx.iter().map(|&i| &elems[i]).collect();
        if let Some(lead) = u.iter().position(|c| **c != zero) {
            if *u[lead] == one {
                let flat = |w: &[Vec<Elem>]| w.iter().flat_map(|c| c.iter().copied()).collect::<Vec<_>>();
                let base: Vec<Vec<Elem>> = u.iter().map(|c| (*c).clone()).collect();
                let scaled: Vec<Vec<Elem>> = u.iter().map(|c| ext.mul(&x, c)).collect();
                let a = point_of(geom, &flat(&base));
                let b = point_of(geom, &flat(&scaled));
                let line = geom.line_span(a, b).expect("u and x*u are independent over GF(q)");
                spread
                    .insert(line, Origin::Search)
                    .expect("regular spread lines are disjoint");
            }
        }
        // odometer over GF(q^2)^m
        let mut k = m;
        loop {
            if k == 0 {
                return spread;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < elems.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Lines of a size-(q^3 + 1) maximal partial spread of PG(4,q).
pub fn structured_pg4_seed(geom: &Geometry) -> PartialSpread {
    assert_eq!(geom.dim(), 4, "seed lives in PG(4,q)");
    let ext = Extension::new(geom.field(), 3);
    let x = ext.generator();
    let mut spread = PartialSpread::new(geom);
    for c in ext.elements() {
        let cx = ext.mul(&c, &x);
        let a = point_of(geom, &[1, 0, c[0], c[1], c[2]]);
        let b = point_of(geom, &[0, 1, cx[0], cx[1], cx[2]]);
        let line = geom.line_span(a, b).expect("independent");
        spread
            .insert(line, Origin::Hyperplane)
            .expect("graph lines are disjoint");
    }
    let a = point_of(geom, &[0, 0, 1, 0, 0]);
    let b = point_of(geom, &[0, 0, 0, 1, 0]);
    spread
        .insert(geom.line_span(a, b).expect("independent"), Origin::Hyperplane)
        .expect("inside the plane");
    spread
}

/// Copies a spread of PG(N-1,q) into the hyperplane `x_N = 0` of PG(N,q).
pub fn embed_spread(geom: &Geometry, sub: &Geometry, spread: &PartialSpread, origin: Origin) -> PartialSpread {
    let lines = spread.lines().iter().map(|l| geom.embed_line(sub, l));
    PartialSpread::from_lines(geom, lines, origin).expect("embedding preserves skewness")
}
