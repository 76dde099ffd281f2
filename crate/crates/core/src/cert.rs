//! Plain-text spread certificates and their independent re-verification.
//!
//! ```text
//! mps-certificate 1
//! q 3
//! N 5
//! modulus -
//! size 49
//! provenance ladder-4
//! seed -
//! 0 0 0 0 0 1 0 0 0 1 0 0
//! ...
//! ```
//!
//! Each record holds the coordinates of the two smallest points of one line.
//! Records are sorted by the first basis point. `modulus` lists the reduction
//! polynomial of GF(q), low to high, for non-prime q. The verifier trusts only
//! `q` and `N`; everything else is recomputed from the records.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::projgeom::{Geometry, Line};
use crate::spread::{is_maximal, Origin, PartialSpread, Verdict};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "mps-certificate";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Ladder(usize),
    Search,
    Spread,
    External,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Ladder(k) => write!(f, "ladder-{k}"),
            Provenance::Search => f.write_str("search"),
            Provenance::Spread => f.write_str("spread"),
            Provenance::External => f.write_str("external"),
        }
    }
}

impl FromStr for Provenance {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "search" => Ok(Provenance::Search),
            "spread" => Ok(Provenance::Spread),
            "external" => Ok(Provenance::External),
            _ => s
                .strip_prefix("ladder-")
                .and_then(|k| k.parse().ok())
                .map(Provenance::Ladder)
                .ok_or_else(|| format!("unknown provenance {s:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub q: u32,
    pub dim: usize,
    pub provenance: Provenance,
    pub seed: Option<u64>,
    /// Canonical order: by point list.
    lines: Vec<Line>,
}

impl Certificate {
    pub fn from_spread(geom: &Geometry, spread: &PartialSpread, provenance: Provenance, seed: Option<u64>) -> Self {
        let mut lines = spread.lines().to_vec();
        lines.sort_unstable();
        Certificate {
            q: geom.q(),
            dim: geom.dim(),
            provenance,
            seed,
            lines,
        }
    }

    pub fn size(&self) -> usize {
        self.lines.len()
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn to_spread(&self, geom: &Geometry) -> Result<PartialSpread> {
        PartialSpread::from_lines(geom, self.lines.iter().cloned(), Origin::Search)
    }

    pub fn to_text(&self, geom: &Geometry) -> String {
        let mut out = String::new();
        let modulus = match geom.field().modulus() {
            Some(m) => m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" "),
            None => "-".into(),
        };
        let seed = self.seed.map_or("-".to_string(), |s| s.to_string());
        out.push_str(&format!(
            "{MAGIC} {FORMAT_VERSION}\nq {}\nN {}\nmodulus {modulus}\nsize {}\nprovenance {}\nseed {seed}\n",
            self.q,
            self.dim,
            self.lines.len(),
            self.provenance
        ));
        for line in &self.lines {
            let (a, b) = line.basis();
            let coords: Vec<String> = geom
                .coords(a)
                .iter()
                .chain(geom.coords(b))
                .map(|c| c.to_string())
                .collect();
            out.push_str(&coords.join(" "));
            out.push('\n');
        }
        out
    }
}

/// A certificate file as read, before any geometric checking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedCertificate {
    pub q: u32,
    pub dim: usize,
    pub modulus: Option<Vec<u8>>,
    pub declared_size: usize,
    pub provenance: Provenance,
    pub seed: Option<u64>,
    /// `(file line number, coordinates of both basis points)`.
    pub records: Vec<(usize, Vec<u32>)>,
}

fn malformed(line: usize, msg: impl Into<String>) -> Error {
    Error::Certificate { line, msg: msg.into() }
}

fn header<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, key: &str) -> Result<(usize, &'a str)> {
    let (no, text) = lines
        .next()
        .ok_or_else(|| malformed(0, format!("missing header field {key:?}")))?;
    let value = text
        .strip_prefix(key)
        .and_then(|rest| rest.strip_prefix(' '))
        .ok_or_else(|| malformed(no, format!("expected header field {key:?}")))?;
    Ok((no, value))
}

fn number<T: FromStr>(no: usize, s: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| malformed(no, format!("not a number: {s:?}")))
}

impl ParsedCertificate {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end()));
        let (no, version) = header(&mut lines, MAGIC)?;
        if number::<u32>(no, version)? != FORMAT_VERSION {
            return Err(malformed(no, format!("unsupported format version {version}")));
        }
        let (no, q) = header(&mut lines, "q")?;
        let q = number(no, q)?;
        let (no, n) = header(&mut lines, "N")?;
        let dim = number(no, n)?;
        let (no, m) = header(&mut lines, "modulus")?;
        let modulus = match m {
            "-" => None,
            m => Some(
                m.split_whitespace()
                    .map(|c| number(no, c))
                    .collect::<Result<Vec<u8>>>()?,
            ),
        };
        let (no, size) = header(&mut lines, "size")?;
        let declared_size = number(no, size)?;
        let (no, prov) = header(&mut lines, "provenance")?;
        let provenance = prov.parse().map_err(|e: String| malformed(no, e))?;
        let (no, seed) = header(&mut lines, "seed")?;
        let seed = match seed {
            "-" => None,
            s => Some(number(no, s)?),
        };
        let mut records = Vec::new();
        for (no, text) in lines {
            if text.trim().is_empty() {
                continue;
            }
            let coords = text
                .split_whitespace()
                .map(|c| number(no, c))
                .collect::<Result<Vec<u32>>>()?;
            records.push((no, coords));
        }
        Ok(ParsedCertificate {
            q,
            dim,
            modulus,
            declared_size,
            provenance,
            seed,
            records,
        })
    }
}

/// Result of re-verifying a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Maximal,
    Extendable(Line),
    /// Not a partial spread of the stated space, or inconsistent with its header.
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub q: u32,
    pub dim: usize,
    pub size: usize,
    pub spread_size: Option<usize>,
    pub outcome: Outcome,
    /// Reconstructed lines, in record order (empty if reconstruction failed).
    pub lines: Vec<Line>,
}

impl VerifyReport {
    pub fn delta(&self) -> Option<usize> {
        self.spread_size.map(|s| s.saturating_sub(self.size))
    }
}

/// Rebuilds every line from its basis, then checks skewness and maximality.
/// `geom` must be PG(`parsed.dim`, `parsed.q`).
pub fn verify(geom: &Geometry, parsed: &ParsedCertificate) -> VerifyReport {
    let mut report = VerifyReport {
        q: parsed.q,
        dim: parsed.dim,
        size: parsed.records.len(),
        spread_size: geom.counts().spread_size.map(|s| s as usize),
        outcome: Outcome::Maximal,
        lines: Vec::new(),
    };
    debug_assert_eq!((geom.q(), geom.dim()), (parsed.q, parsed.dim));
    let invalid = |msg: String| Outcome::Invalid(msg);
    if parsed.modulus.as_deref() != geom.field().modulus() {
        report.outcome = invalid(format!(
            "modulus {:?} does not match the field encoding {:?}",
            parsed.modulus,
            geom.field().modulus()
        ));
        return report;
    }
    let w = geom.width();
    let mut lines = Vec::with_capacity(parsed.records.len());
    for (no, coords) in &parsed.records {
        if coords.len() != 2 * w {
            report.outcome = invalid(format!("line {no}: expected {} integers, got {}", 2 * w, coords.len()));
            return report;
        }
        if let Some(bad) = coords.iter().find(|&&c| c >= parsed.q) {
            report.outcome = invalid(format!("line {no}: {bad} is not an element of GF({})", parsed.q));
            return report;
        }
        let v: Vec<u8> = coords.iter().map(|&c| c as u8).collect();
        let line = geom
            .point_id(&v[..w])
            .and_then(|a| geom.point_id(&v[w..]).map(|b| (a, b)))
            .and_then(|(a, b)| geom.line_span(a, b));
        match line {
            Ok(l) => lines.push(l),
            Err(e) => {
                report.outcome = invalid(format!("line {no}: {e}"));
                return report;
            }
        }
    }
    let mut spread = PartialSpread::new(geom);
    for (i, l) in lines.iter().enumerate() {
        if let Err(Error::Conflict { point }) = spread.insert(l.clone(), Origin::External) {
            let j = lines[..i]
                .iter()
                .position(|m| m.contains(point))
                .expect("conflict has an owner");
            report.outcome = invalid(format!(
                "records {} and {} are not skew: both contain point {point} {:?}",
                j + 1,
                i + 1,
                geom.coords(point)
            ));
            report.lines = lines;
            return report;
        }
    }
    report.lines = lines;
    if parsed.declared_size != parsed.records.len() {
        report.outcome = invalid(format!(
            "header declares size {} but the file has {} records",
            parsed.declared_size,
            parsed.records.len()
        ));
        return report;
    }
    report.outcome = match is_maximal(geom, &spread) {
        Verdict::Maximal => Outcome::Maximal,
        Verdict::Extendable(w) => Outcome::Extendable(w),
    };
    report
}

/// Parses `text`, builds the geometry it names, and verifies it.
pub fn verify_text(text: &str) -> Result<VerifyReport> {
    let parsed = ParsedCertificate::parse(text)?;
    let geom = Geometry::new(parsed.q, parsed.dim)?;
    Ok(verify(&geom, &parsed))
}
