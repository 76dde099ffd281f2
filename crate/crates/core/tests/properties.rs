use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mps_core::cert::{verify_text, Certificate, Outcome, ParsedCertificate, Provenance};
use mps_core::gf::Field;
use mps_core::projgeom::Geometry;
use mps_core::spread::{is_maximal, Origin, PartialSpread, Verdict};

/// Random partial spread of PG(5,q) built from `seed`.
fn random_spread(geom: &Geometry, seed: u64, attempts: usize) -> PartialSpread {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = PartialSpread::new(geom);
    let n = geom.point_count() as u32;
    for _ in 0..attempts {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a == b {
            continue;
        }
        let l = geom.line_span(a, b).unwrap();
        if s.can_insert(l.points()) {
            s.insert(l, Origin::Search).unwrap();
        }
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_and_distributivity(q in prop::sample::select(vec![2u32, 3, 4, 5, 7, 9]), a in 0u8..9, b in 0u8..9, c in 0u8..9) {
        let f = Field::new(q).unwrap();
        let (a, b, c) = (a % q as u8, b % q as u8, c % q as u8);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
    }

    #[test]
    fn any_two_points_of_a_line_span_it(q in prop::sample::select(vec![2u32, 3, 4]), a in 0u32..10_000, b in 0u32..10_000, i in 0usize..5, j in 0usize..5) {
        let g = Geometry::new(q, 5).unwrap();
        let n = g.point_count() as u32;
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b);
        let l = g.line_span(a, b).unwrap();
        let k = q as usize + 1;
        let (i, j) = (i % k, j % k);
        prop_assume!(i != j);
        prop_assert_eq!(g.line_span(l.points()[i], l.points()[j]).unwrap(), l);
    }

    #[test]
    fn counting_identity_holds(q in 2u32..=3, seed in any::<u64>(), attempts in 0usize..400) {
        let g = Geometry::new(q, 5).unwrap();
        let s = random_spread(&g, seed, attempts);
        let q = q as usize;
        prop_assert_eq!((q + 1) * s.len() + s.hole_count(), (q.pow(6) - 1) / (q - 1));
        s.check_invariants().unwrap();
    }

    #[test]
    fn certificates_round_trip(q in prop::sample::select(vec![2u32, 3, 4]), seed in any::<u64>(), attempts in 0usize..200) {
        let g = Geometry::new(q, 5).unwrap();
        let s = random_spread(&g, seed, attempts);
        let cert = Certificate::from_spread(&g, &s, Provenance::External, None);
        let text = cert.to_text(&g);
        let parsed = ParsedCertificate::parse(&text).unwrap();
        let back = Certificate::from_spread(&g, &cert.to_spread(&g).unwrap(), Provenance::External, None);
        prop_assert_eq!(back.to_text(&g), text.clone());
        prop_assert_eq!(parsed.declared_size, s.len());
        let report = verify_text(&text).unwrap();
        match is_maximal(&g, &s) {
            Verdict::Maximal => prop_assert_eq!(report.outcome, Outcome::Maximal),
            Verdict::Extendable(w) => prop_assert_eq!(report.outcome, Outcome::Extendable(w)),
        }
    }

    #[test]
    fn witness_extends_the_spread(seed in any::<u64>(), attempts in 0usize..60) {
        let g = Geometry::new(2, 5).unwrap();
        let mut s = random_spread(&g, seed, attempts);
        if let Verdict::Extendable(w) = is_maximal(&g, &s) {
            let before = s.len();
            s.insert(w, Origin::Search).unwrap();
            prop_assert_eq!(s.len(), before + 1);
        }
    }
}
