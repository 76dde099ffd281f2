//! Reference sizes for maximal partial line spreads of PG(5,q).

use crate::error::{Error, Result};
use crate::projgeom::counts;

const DIM: u32 = 5;

/// `q + epsilon` is the size of the smallest non-trivial blocking set of
/// PG(2,q); epsilon is taken as 2 for q = 2.
pub fn epsilon(q: u32) -> Option<usize> {
    match q {
        2 => Some(2),
        3 => Some(3),
        4 => Some(3),
        5 => Some(4),
        7 => Some(5),
        _ => None,
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn integer_sqrt(n: u32) -> Option<u32> {
    (1..=n).take_while(|r| r * r <= n).find(|r| r * r == n)
}

/// Lower bound on the deficiency of a maximal partial line spread that is
/// not a spread.
pub fn delta_min(q: u32) -> Option<usize> {
    if q == 2 {
        Some(2)
    } else if is_prime(q) {
        Some((q as usize + 3) / 2)
    } else {
        integer_sqrt(q).filter(|&r| is_prime(r)).map(|r| r as usize + 1)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundsRow {
    pub q: u32,
    /// q^3 + q^2 + 1, the smallest maximal partial spread.
    pub min_size: usize,
    pub epsilon: usize,
    pub delta_min: usize,
    /// spread_size - delta_min.
    pub max_size: usize,
    /// Upper end of the known interval of sizes: spread_size - q + 1.
    pub interval_top: usize,
    pub spread_size: usize,
    /// Lower end of the known interval, 9 N q^(N-2) ln q at N = 5.
    pub interval_bottom: f64,
    /// 2 q^3 log q with natural and binary logarithm.
    pub sharpened_bottom_ln: f64,
    pub sharpened_bottom_log2: f64,
    /// Deficiency of the largest maximal partial spread found by search, q <= 5.
    pub largest_found_delta: Option<usize>,
}

pub fn bounds(q: u32) -> Result<BoundsRow> {
    let eps = epsilon(q).ok_or(Error::NoBounds(q))?;
    let delta_min = delta_min(q).ok_or(Error::NoBounds(q))?;
    let spread_size = counts(q as u64, DIM).spread_size.expect("odd dimension") as usize;
    let qf = q as f64;
    let qs = q as usize;
    Ok(BoundsRow {
        q,
        min_size: qs.pow(3) + qs.pow(2) + 1,
        epsilon: eps,
        delta_min,
        max_size: spread_size - delta_min,
        interval_top: spread_size - qs + 1,
        spread_size,
        interval_bottom: 9.0 * DIM as f64 * qf.powi(DIM as i32 - 2) * qf.ln(),
        sharpened_bottom_ln: 2.0 * qf.powi(3) * qf.ln(),
        sharpened_bottom_log2: 2.0 * qf.powi(3) * qf.log2(),
        largest_found_delta: (q <= 5).then_some(delta_min),
    })
}

impl BoundsRow {
    /// Why a maximal spread of this size cannot exist, if the bounds say so.
    pub fn refusal(&self, size: usize) -> Option<String> {
        if size < self.min_size {
            return Some(format!(
                "size {size} is below the minimum q^3+q^2+1 = {}",
                self.min_size
            ));
        }
        if size > self.spread_size {
            return Some(format!("size {size} exceeds the spread size {}", self.spread_size));
        }
        let delta = self.spread_size - size;
        (delta > 0 && delta < self.delta_min).then(|| {
            format!(
                "δ={delta} < δ_min={}: no maximal partial spread has this deficiency",
                self.delta_min
            )
        })
    }

    /// `min | δ≥d | ≤max | interval top | spread`.
    pub fn table_row(&self) -> String {
        format!(
            "{} | δ≥{} | ≤{} | {} | {}",
            self.min_size, self.delta_min, self.max_size, self.interval_top, self.spread_size
        )
    }

    pub fn csv_header() -> &'static str {
        "q,min_size,epsilon,delta_min,max_size,interval_top,spread_size,interval_bottom,sharpened_bottom_ln,sharpened_bottom_log2"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{:.2},{:.2},{:.2}",
            self.q,
            self.min_size,
            self.epsilon,
            self.delta_min,
            self.max_size,
            self.interval_top,
            self.spread_size,
            self.interval_bottom,
            self.sharpened_bottom_ln,
            self.sharpened_bottom_log2
        )
    }
}
