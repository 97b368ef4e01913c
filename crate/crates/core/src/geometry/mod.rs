//! Finite projective geometry: canonical `PG(n, q)` models over the nimber
//! fields, incidence structures, design/Pasch checks and isomorphism.
//!
//! Points of `PG(n, q)` are normalized vectors packed as base-`q` integers
//! (first coordinate most significant). Because `q` is a power of two and
//! field addition is XOR, vector addition is XOR of the packed integers.
//! Points are numbered 1.. in increasing packed order; for `q = 2` the
//! number of a point is its packed value.

mod design;
mod incidence;
mod iso;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

pub use design::{check_design, check_veblen_young};
pub use incidence::IncidenceStructure;
pub use iso::{isomorphic, IsoOutcome, DEFAULT_NODE_BUDGET};

use crate::bitset::BitSet;
use crate::greedy::gaussian_points;
use crate::nimber::FermatField;
use crate::{Error, Result};

pub const DEFAULT_POINT_BOUND: u64 = 10_000;

/// Normalized coordinate vector: not all zero, first nonzero entry is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjectivePoint {
    pub coords: Vec<u64>,
}

impl ProjectivePoint {
    /// Scales `coords` so the first nonzero coordinate is 1.
    pub fn normalize(field: &FermatField, coords: &[u64]) -> Result<Self> {
        let lead = coords
            .iter()
            .copied()
            .find(|&c| c != 0)
            .ok_or_else(|| Error::InvalidArgument("the zero vector is not a projective point".into()))?;
        if let Some(&bad) = coords.iter().find(|&&c| !field.contains(c)) {
            return Err(Error::OutOfRange { value: bad, limit: field.order() });
        }
        let scale = field.inv(lead).expect("nonzero field element");
        Ok(Self { coords: coords.iter().map(|&c| field.mul(scale, c)).collect() })
    }

    fn pack(&self, q: u64) -> u64 {
        self.coords.iter().fold(0, |acc, &c| acc * q + c)
    }

    fn unpack(mut packed: u64, q: u64, len: usize) -> Self {
        let mut coords = vec![0; len];
        for slot in coords.iter_mut().rev() {
            *slot = packed % q;
            packed /= q;
        }
        Self { coords }
    }
}

/// Parameter tuple of `PG(n, q)`: points `v`, lines `b`, lines per point
/// `r`, points per line `k`, and `d`, the number of 2-dimensional subspaces
/// of `GF(q)^(n+1)` (equal to `b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PgCounts {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub k: u64,
    pub d: u64,
}

pub fn expected_counts(n: u32, q: u64) -> Result<PgCounts> {
    FermatField::from_order(q)?;
    if n == 0 {
        return Err(Error::InvalidParameter("dimension n must be at least 1".into()));
    }
    let overflow = || Error::Resource(format!("PG({n}, {q}) counts overflow 64 bits"));
    let v = gaussian_points(q, n + 1).ok_or_else(overflow)?;
    let r = gaussian_points(q, n).ok_or_else(overflow)?;
    let k = q + 1;
    let b = u64::try_from(v as u128 * r as u128 / k as u128).map_err(|_| overflow())?;
    Ok(PgCounts { v, b, r, k, d: b })
}

#[derive(Debug, Clone)]
pub struct CanonicalGeometry {
    pub n: u32,
    pub q: u64,
    pub points: Vec<ProjectivePoint>,
    /// Sorted 1-based point indices, lines in lexicographic order.
    pub lines: Vec<Vec<usize>>,
}

impl CanonicalGeometry {
    pub fn counts(&self) -> PgCounts {
        expected_counts(self.n, self.q).expect("validated at construction")
    }

    pub fn to_incidence(&self) -> IncidenceStructure {
        IncidenceStructure::new(self.points.len(), self.lines.clone()).expect("canonical lines are valid")
    }
}

pub fn build_pg(n: u32, q: u64) -> Result<CanonicalGeometry> {
    build_pg_bounded(n, q, DEFAULT_POINT_BOUND)
}

pub fn build_pg_bounded(n: u32, q: u64, point_bound: u64) -> Result<CanonicalGeometry> {
    let field = FermatField::from_order(q)?;
    let counts = expected_counts(n, q)?;
    if counts.v > point_bound {
        return Err(Error::Resource(format!("PG({n}, {q}) has {} points, bound is {point_bound}", counts.v)));
    }
    let dim = n as usize + 1;
    let space = q.pow(n + 1);

    let points: Vec<ProjectivePoint> = (1..space)
        .map(|packed| ProjectivePoint::unpack(packed, q, dim))
        .filter(|p| p.coords.iter().find(|&&c| c != 0) == Some(&1))
        .collect();
    let index: HashMap<u64, usize> = points.iter().enumerate().map(|(i, p)| (p.pack(q), i)).collect();
    let v = points.len();

    let mut covered: Vec<BitSet> = vec![BitSet::new(); v];
    let mut lines = Vec::with_capacity(counts.b as usize);
    for p in 0..v {
        for r in p + 1..v {
            if covered[p].contains(r) {
                continue;
            }
            let mut line: Vec<usize> = vec![r];
            for lambda in 0..q {
                let sum: Vec<u64> = points[p]
                    .coords
                    .iter()
                    .zip(&points[r].coords)
                    .map(|(&a, &b)| field.add(a, field.mul(lambda, b)))
                    .collect();
                let normalized = ProjectivePoint::normalize(&field, &sum)?;
                line.push(index[&normalized.pack(q)]);
            }
            line.sort_unstable();
            line.dedup();
            for (i, &x) in line.iter().enumerate() {
                for &y in &line[i + 1..] {
                    covered[x].insert(y);
                    covered[y].insert(x);
                }
            }
            lines.push(line.into_iter().map(|x| x + 1).collect::<Vec<_>>());
        }
    }
    lines.sort();
    Ok(CanonicalGeometry { n, q, points, lines })
}

/// The nim model of `PG(n, 2)`: points `1..2^(n+1)`, lines the triples
/// `{a, b, a⊕b}` with `0 < a < b < a⊕b < 2^(n+1)`, in lexicographic order.
pub fn build_pg2_nim(n: u32) -> Result<IncidenceStructure> {
    if n == 0 || n > 20 {
        return Err(Error::InvalidParameter(format!("nim model needs 1 <= n <= 20, got {n}")));
    }
    let limit = 1usize << (n + 1);
    let mut lines = Vec::new();
    for a in 1..limit {
        for b in a + 1..limit {
            let c = a ^ b;
            if c > b && c < limit {
                lines.push(vec![a, b, c]);
            }
        }
    }
    IncidenceStructure::new(limit - 1, lines)
}
