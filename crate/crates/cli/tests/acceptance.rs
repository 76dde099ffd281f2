//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p mps-cli --test acceptance -- --nocapture` to see
//! the report.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mps_core::builder::{cover_holes, lemma_line, n_max, RemovalOrder};
use mps_core::cert::{verify_text, Certificate, Outcome, Provenance};
use mps_core::construct::{embed_spread, regular_spread, structured_pg4_seed};
use mps_core::projgeom::{Geometry, Hyperplane, Line, LineMeet, PointId};
use mps_core::search::{greedy_complete, local_search_resize, spectrum_scan, SearchConfig, SpectrumConfig};
use mps_core::spread::{hyperplane_saturated, is_maximal, Origin, PartialSpread, Verdict};

const MPS: &str = env!("CARGO_BIN_EXE_mps");

type Report = Result<String, String>;
type Criterion = (&'static str, fn() -> Report);

fn seed_for(geom: &Geometry) -> PartialSpread {
    let sub = Geometry::new(geom.q(), 4).unwrap();
    embed_spread(geom, &sub, &structured_pg4_seed(&sub), Origin::Hyperplane)
}

fn points_of_pg5(q: usize) -> usize {
    (q.pow(6) - 1) / (q - 1)
}

fn assert_counting(s: &PartialSpread) {
    let q = s.q() as usize;
    assert_eq!(
        (q + 1) * s.len() + s.hole_count(),
        points_of_pg5(q),
        "counting identity at size {}",
        s.len()
    );
}

/// Re-verifies a certificate through its text form and returns its size.
fn certified_maximal(geom: &Geometry, cert: &Certificate) -> usize {
    let report = verify_text(&cert.to_text(geom)).expect("well-formed certificate");
    assert_eq!(
        report.outcome,
        Outcome::Maximal,
        "certificate of size {} not maximal",
        report.size
    );
    report.size
}

/// Exhaustive maximality check against every line of the space.
fn brute_force_witness(geom: &Geometry, s: &PartialSpread) -> Option<Line> {
    geom.lines()
        .into_iter()
        .find(|l| l.points().iter().all(|&p| !s.is_covered(p)))
}

fn mps(args: &[&str]) -> std::process::Output {
    Command::new(MPS).args(args).output().expect("mps binary runs")
}

fn criterion_1() -> Report {
    let t = Instant::now();
    let out = mps(&["bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = [
        "2 | 13 | δ≥2 | ≤19 | 20 | 21",
        "3 | 37 | δ≥3 | ≤88 | 89 | 91",
        "4 | 81 | δ≥3 | ≤270 | 270 | 273",
        "5 | 151 | δ≥4 | ≤647 | 647 | 651",
        "7 | 393 | δ≥5 | ≤2446 | 2445 | 2451",
    ];
    for row in rows {
        assert!(text.lines().any(|l| l == row), "missing row {row:?}");
    }
    let five = String::from_utf8(mps(&["bounds", "--q", "5"]).stdout).unwrap();
    assert!(five.contains("151 | δ≥4 | ≤647 | 647 | 651"));
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("5 rows exact in {elapsed:.2?}"))
}

fn criterion_2() -> Report {
    let mut summary = Vec::new();
    for q in [2u32, 3, 4, 5] {
        let t = Instant::now();
        let geom = Geometry::new(q, 5).unwrap();
        let h = geom.last_coordinate_hyperplane();
        let mut state = cover_holes(&geom, &h, &seed_for(&geom)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let qs = q as usize;
        for k in 0..=n_max(q) {
            if k > 0 {
                let r = state.next_removal(RemovalOrder::LeastFirst, &mut rng).unwrap();
                state.ladder_step(&r).unwrap();
            }
            let cert = Certificate::from_spread(&geom, state.spread(), Provenance::Ladder(k), None);
            let size = certified_maximal(&geom, &cert);
            assert_eq!(size, qs.pow(3) + qs * qs + k * qs + 1, "q={q} k={k}");
            assert_counting(state.spread());
        }
        summary.push(format!("q={q} k=0..{} in {:.2?}", n_max(q), t.elapsed()));
    }
    // q=7 smoke test: one ladder step
    let geom = Geometry::new(7, 5).unwrap();
    let cert = mps_core::builder::build_ladder(&geom, 1, &seed_for(&geom)).unwrap();
    assert_eq!(certified_maximal(&geom, &cert), 400);
    summary.push("q=7 k=1 size 400".into());
    Ok(summary.join("; "))
}

fn criterion_3() -> Report {
    let mut sizes = Vec::new();
    for (q, expected) in [(2u32, 13usize), (3, 37), (4, 81)] {
        let geom = Geometry::new(q, 5).unwrap();
        let state = cover_holes(&geom, &geom.last_coordinate_hyperplane(), &seed_for(&geom)).unwrap();
        let cert = Certificate::from_spread(&geom, state.spread(), Provenance::Ladder(0), None);
        assert_eq!(certified_maximal(&geom, &cert), expected);
        sizes.push(expected.to_string());
    }
    Ok(format!("sizes {}", sizes.join(", ")))
}

fn random_hyperplane(geom: &Geometry, rng: &mut ChaCha8Rng) -> Hyperplane {
    let q = geom.q() as u8;
    loop {
        let cov: Vec<u8> = (0..geom.width()).map(|_| rng.gen_range(0..q)).collect();
        if let Ok(h) = geom.hyperplane(&cov) {
            return h;
        }
    }
}

/// Random lines off `h`, missing `x`, pairwise meeting only inside `h`.
fn random_avoid_set(geom: &Geometry, h: &Hyperplane, x: PointId, rng: &mut ChaCha8Rng) -> Vec<Line> {
    let q = geom.q() as usize;
    let want = rng.gen_range(0..q.pow(3));
    let mut off: Vec<PointId> = (0..geom.point_count() as PointId).filter(|&p| !h.contains(p)).collect();
    off.shuffle(rng);
    let mut used = vec![false; geom.point_count()];
    let mut lines = Vec::new();
    for &p in &off {
        if lines.len() == want {
            break;
        }
        if used[p as usize] {
            continue;
        }
        let mut through = geom.lines_through(p);
        through.shuffle(rng);
        let pick = through.into_iter().find(|l| {
            !l.contains(x) && !h.contains_line(l) && l.points().iter().all(|&r| h.contains(r) || !used[r as usize])
        });
        if let Some(l) = pick {
            for &r in l.points().iter().filter(|&&r| !h.contains(r)) {
                used[r as usize] = true;
            }
            lines.push(l);
        }
    }
    lines
}

fn criterion_4() -> Report {
    let mut largest = 0;
    for q in [2u32, 3] {
        let geom = Geometry::new(q, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
        for instance in 0..200 {
            let h = random_hyperplane(&geom, &mut rng);
            let hp = h.points();
            let x = hp[rng.gen_range(0..hp.len())];
            let avoid = random_avoid_set(&geom, &h, x, &mut rng);
            largest = largest.max(avoid.len());
            // all q^4 lines through x not in h, checked one by one
            let candidates: Vec<Line> = geom
                .lines_through(x)
                .into_iter()
                .filter(|l| !h.contains_line(l))
                .collect();
            assert_eq!(candidates.len(), (q as usize).pow(4));
            let good: Vec<&Line> = candidates
                .iter()
                .filter(|c| avoid.iter().all(|a| c.is_skew(a)))
                .collect();
            assert!(!good.is_empty(), "q={q} instance {instance}: no candidate");
            let line = lemma_line(&geom, &h, x, &avoid).unwrap_or_else(|e| panic!("q={q} instance {instance}: {e}"));
            assert!(line.contains(x));
            assert_eq!(h.meet(&line).unwrap(), LineMeet::Point(x));
            assert!(
                good.contains(&&line),
                "q={q} instance {instance}: returned line fails the oracle"
            );
        }
    }
    Ok(format!("400 instances, |L| up to {largest}, zero failures"))
}

fn random_partial_spread(geom: &Geometry, rng: &mut ChaCha8Rng, complete: bool) -> PartialSpread {
    let mut s = PartialSpread::new(geom);
    if complete {
        greedy_complete(geom, &mut s, rng, Origin::Search);
        // knock out a few lines so some samples are extendable again
        let drop = rng.gen_range(0..3usize).min(s.len());
        let idx: Vec<usize> = rand::seq::index::sample(rng, s.len(), drop).into_vec();
        s.remove_indices(&idx);
        return s;
    }
    let lines = geom.lines();
    let attempts = rng.gen_range(0..lines.len());
    for _ in 0..attempts {
        let l = &lines[rng.gen_range(0..lines.len())];
        if s.can_insert(l.points()) {
            s.insert(l.clone(), Origin::Search).unwrap();
        }
    }
    s
}

fn criterion_5() -> Report {
    let mut maximal = 0;
    let mut total = 0;
    for (q, n) in [(2u32, 50usize), (3, 20)] {
        let geom = Geometry::new(q, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(100 + q as u64);
        for i in 0..n {
            let s = random_partial_spread(&geom, &mut rng, i % 2 == 0);
            let fast = is_maximal(&geom, &s);
            let slow = brute_force_witness(&geom, &s);
            match (&fast, &slow) {
                (Verdict::Maximal, None) => maximal += 1,
                (Verdict::Extendable(w), Some(b)) => assert_eq!(w, b, "q={q} sample {i}: witnesses differ"),
                _ => panic!("q={q} sample {i}: verdict {fast:?}, oracle {slow:?}"),
            }
            assert_counting(&s);
            total += 1;
        }
    }
    Ok(format!("{total} spreads ({maximal} maximal), zero disagreements"))
}

fn criterion_6() -> Report {
    let t = Instant::now();
    let geom = Geometry::new(2, 5).unwrap();
    let report = spectrum_scan(&geom, &SpectrumConfig::new(SearchConfig::ci(1))).unwrap();
    let sizes: BTreeSet<usize> = report.sizes().into_iter().collect();
    for want in [13, 15, 16, 17, 18, 19, 21] {
        assert!(sizes.contains(&want), "size {want} not certified; got {sizes:?}");
    }
    assert!(
        !sizes.contains(&14) && !sizes.contains(&20),
        "impossible size certified: {sizes:?}"
    );
    for a in report.achieved.values() {
        certified_maximal(&geom, &a.certificate);
    }
    // a spread minus one line is never maximal
    let mut full = regular_spread(&geom);
    let gone = full.lines()[0].clone();
    full.remove_line(&gone);
    assert_eq!(is_maximal(&geom, &full), Verdict::Extendable(gone));
    let elapsed = t.elapsed();
    assert!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(format!("certified {sizes:?} in {elapsed:.2?}"))
}

fn criterion_7() -> Report {
    let t = Instant::now();
    let geom = Geometry::new(3, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut start = PartialSpread::new(&geom);
    greedy_complete(&geom, &mut start, &mut rng, Origin::Search);
    let mut band = BTreeSet::new();
    let mut observe = |s: &PartialSpread| {
        if (60..=88).contains(&s.len()) && !band.contains(&s.len()) && is_maximal(&geom, s).is_maximal() {
            band.insert(s.len());
        }
    };
    let found = local_search_resize(&geom, &start, 73, &SearchConfig::long(12), &mut observe, None)
        .map_err(|f| f.to_string())?;
    let cert = Certificate::from_spread(&geom, &found.spread, Provenance::Search, Some(12));
    assert_eq!(certified_maximal(&geom, &cert), 73);
    band.insert(73);
    assert!(band.len() >= 5, "only {} band sizes: {band:?}", band.len());
    Ok(format!(
        "size 73 after {} steps; band sizes {band:?} in {:.2?}",
        found.steps,
        t.elapsed()
    ))
}

fn criterion_8() -> Report {
    let mut states = 0usize;
    for q in [2u32, 3, 4] {
        let geom = Geometry::new(q, 5).unwrap();
        let h = geom.last_coordinate_hyperplane();
        let mut state = cover_holes(&geom, &h, &seed_for(&geom)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
        loop {
            assert_counting(state.spread());
            assert!(hyperplane_saturated(state.spread(), &h));
            assert!(is_maximal(&geom, state.spread()).is_maximal());
            states += 1;
            match state.next_removal(RemovalOrder::Random, &mut rng) {
                Some(r) if state.steps() < n_max(q) => state.ladder_step(&r).unwrap(),
                _ => break,
            }
        }
    }
    // search states: every visited spread, plus saturation against random hyperplanes
    for q in [2u32, 3] {
        let geom = Geometry::new(q, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(40 + q as u64);
        let planes: Vec<Hyperplane> = (0..8).map(|_| random_hyperplane(&geom, &mut rng)).collect();
        let mut start = PartialSpread::new(&geom);
        greedy_complete(&geom, &mut start, &mut rng, Origin::Search);
        let mut cfg = SearchConfig::ci(q as u64);
        cfg.restarts = 1;
        cfg.max_steps = 300;
        let mut observe = |s: &PartialSpread| {
            assert_counting(s);
            for h in &planes {
                if hyperplane_saturated(s, h) {
                    assert!(is_maximal(&geom, s).is_maximal());
                }
            }
            states += 1;
        };
        let _ = local_search_resize(&geom, &start, 0, &cfg, &mut observe, None);
    }
    Ok(format!("{states} states, zero violations"))
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap()
}

fn criterion_9() -> Report {
    let dir = tempfile::tempdir().unwrap();
    let runs = [
        vec!["construct", "--q", "3", "--k", "2"],
        vec!["search", "--q", "2", "--target", "16", "--seed", "7", "--jobs", "1"],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.path().join(format!("{}-{run}.cert", args[0]));
            let mut full = args.clone();
            let p = path.to_str().unwrap().to_string();
            full.extend(["--out", &p]);
            let out = mps(&full);
            assert_eq!(
                out.status.code(),
                Some(0),
                "{full:?}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            outputs.push(read(&path));
        }
        assert_eq!(outputs[0], outputs[1], "{} certificates differ", args[0]);
    }
    Ok("construct and search certificates byte-identical".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("1 bounds table", criterion_1),
        ("2 ladder sizes", criterion_2),
        ("3 hole-covering sizes", criterion_3),
        ("4 lemma property suite", criterion_4),
        ("5 maximality oracle", criterion_5),
        ("6 q=2 spectrum", criterion_6),
        ("7 q=3 search milestones", criterion_7),
        ("8 counting identities", criterion_8),
        ("9 determinism", criterion_9),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                println!("FAIL criterion {name}: {why}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
