use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Finite list of lines over the point window `1..=v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceStructure {
    point_count: usize,
    lines: Vec<Vec<usize>>,
}

impl IncidenceStructure {
    /// Sorts each line; rejects points outside `1..=v`, repeated points in a
    /// line, and repeated lines.
    pub fn new(point_count: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(lines.len());
        let mut sorted = Vec::with_capacity(lines.len());
        for (i, mut line) in lines.into_iter().enumerate() {
            line.sort_unstable();
            if let Some(&p) = line.iter().find(|&&p| p == 0 || p > point_count) {
                return Err(Error::InvalidArgument(format!("line {} has point {p} outside 1..={point_count}", i + 1)));
            }
            if line.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidArgument(format!("line {} repeats a point", i + 1)));
            }
            if !seen.insert(line.clone()) {
                return Err(Error::InvalidArgument(format!("line {} repeats {line:?}", i + 1)));
            }
            sorted.push(line);
        }
        Ok(Self { point_count, lines: sorted })
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// `degrees()[p - 1]` is the number of lines through point `p`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.point_count];
        for &p in self.lines.iter().flatten() {
            deg[p - 1] += 1;
        }
        deg
    }

    /// `incidence()[p - 1]` lists the indices (0-based) of lines through `p`.
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut through = vec![Vec::new(); self.point_count];
        for (l, line) in self.lines.iter().enumerate() {
            for &p in line {
                through[p - 1].push(l);
            }
        }
        through
    }

    /// Number of lines containing both `x` and `y`.
    pub fn pair_count(&self, x: usize, y: usize) -> usize {
        self.lines.iter().filter(|l| l.binary_search(&x).is_ok() && l.binary_search(&y).is_ok()).count()
    }

    /// Every pair of distinct points lies on exactly one line.
    pub fn is_linear_space(&self) -> bool {
        self.first_non_unique_pair().is_none()
    }

    /// First pair `(x, y)`, `x < y`, not covered exactly once, with its count.
    pub fn first_non_unique_pair(&self) -> Option<(usize, usize, usize)> {
        let through = self.incidence();
        let mut hits = vec![0usize; self.point_count + 1];
        for x in 1..=self.point_count {
            hits.iter_mut().for_each(|h| *h = 0);
            for &l in &through[x - 1] {
                for &y in &self.lines[l] {
                    hits[y] += 1;
                }
            }
            if let Some(y) = (x + 1..=self.point_count).find(|&y| hits[y] != 1) {
                return Some((x, y, hits[y]));
            }
        }
        None
    }

    /// Same structure with point `p` renamed to `perm[p - 1]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.point_count {
            return Err(Error::InvalidArgument("permutation length differs from point count".into()));
        }
        let lines = self.lines.iter().map(|l| l.iter().map(|&p| perm[p - 1]).collect()).collect();
        Self::new(self.point_count, lines)
    }

    /// Lines sorted lexicographically.
    pub fn canonical_lines(&self) -> Vec<Vec<usize>> {
        let mut lines = self.lines.clone();
        lines.sort();
        lines
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(IncidenceStructure::new(3, vec![vec![3, 1, 2]]).is_ok());
        assert!(IncidenceStructure::new(3, vec![vec![1, 4]]).is_err());
        assert!(IncidenceStructure::new(3, vec![vec![0, 1]]).is_err());
        assert!(IncidenceStructure::new(3, vec![vec![1, 1]]).is_err());
        assert!(IncidenceStructure::new(3, vec![vec![1, 2], vec![2, 1]]).is_err());
    }

    #[test]
    fn stats() {
        let s = IncidenceStructure::new(4, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert_eq!(s.degrees(), vec![1, 1, 2, 1]);
        assert_eq!(s.pair_count(1, 2), 1);
        assert_eq!(s.pair_count(1, 4), 0);
        assert_eq!(s.first_non_unique_pair(), Some((1, 4, 0)));
        assert!(!s.is_linear_space());
    }
}
