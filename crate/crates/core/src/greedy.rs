//! Entry-wise lexicographic generation of the naive matrix of type `(k, r)`.
//!
//! Entry `a[i][j]` is 1 unless one of three conditions blocks it:
//!
//! 1. some column `j' < j` already in row `i` shares an earlier row with `j`;
//! 2. row `i` already holds `k` ones left of `j`;
//! 3. column `j` already holds `r` ones above row `i`.
//!
//! The matrix is infinite; it is represented by the finite list of rows
//! emitted so far, each row being the sorted set of its 1-columns.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::nimber::fermat_exponent;
use crate::{Error, Result};

pub const DEFAULT_COLUMN_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    /// Row weight.
    pub k: usize,
    /// Column weight.
    pub r: usize,
    pub max_rows: usize,
    /// Columns beyond this bound are never probed.
    pub column_cap: usize,
}

impl GenParams {
    pub fn new(k: usize, r: usize, max_rows: usize) -> Result<Self> {
        Self { k, r, max_rows, column_cap: DEFAULT_COLUMN_CAP }.validated()
    }

    pub fn with_column_cap(self, column_cap: usize) -> Result<Self> {
        Self { column_cap, ..self }.validated()
    }

    fn validated(self) -> Result<Self> {
        let problem = if self.k < 2 {
            Some(format!("k must be at least 2, got {}", self.k))
        } else if self.r < 1 {
            Some("r must be at least 1".to_string())
        } else if self.max_rows < 1 {
            Some("max_rows must be at least 1".to_string())
        } else if self.column_cap < self.k {
            Some(format!("column_cap {} is below k = {}", self.column_cap, self.k))
        } else {
            None
        };
        match problem {
            Some(msg) => Err(Error::InvalidParameter(msg)),
            None => Ok(self),
        }
    }
}

/// Which known parameter family a `(k, r)` pair belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    None,
    /// `k = 3`, `r = 2^n - 1`.
    Q2Theorem { n: u32 },
    /// `k = q + 1`, `r = (q^n - 1)/(q - 1)` with `q` a Fermat 2-power.
    GeneralQ { q: u64, n: u32 },
}

/// Row count `d`, point-window width `s`, point count `v` and line count `b`
/// of a recognised family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyCounts {
    pub d: u64,
    pub s: u64,
    pub v: u64,
    pub b: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedParams {
    pub family: Family,
    pub counts: Option<FamilyCounts>,
}

/// `(q^m - 1)/(q - 1)`, or `None` on overflow.
pub(crate) fn gaussian_points(q: u64, m: u32) -> Option<u64> {
    let qm = (q as u128).checked_pow(m)?;
    u64::try_from((qm - 1) / (q as u128 - 1)).ok()
}

pub fn derive_params(p: &GenParams) -> DerivedParams {
    let none = DerivedParams { family: Family::None, counts: None };
    let (k, r) = (p.k as u64, p.r as u64);
    if k == 3 && (r + 1).is_power_of_two() && r >= 1 {
        let n = (r + 1).trailing_zeros();
        let s = (1u64 << (n + 1)) - 1;
        let d = s * r / 3;
        return DerivedParams {
            family: Family::Q2Theorem { n },
            counts: Some(FamilyCounts { d, s, v: s, b: d }),
        };
    }
    let q = k - 1;
    if fermat_exponent(q).is_none() {
        return none;
    }
    // smallest n with (q^n - 1)/(q - 1) >= r
    let mut n = 1;
    loop {
        match gaussian_points(q, n) {
            Some(x) if x < r => n += 1,
            Some(x) if x == r => break,
            _ => return none,
        }
    }
    let Some(v) = gaussian_points(q, n + 1) else { return none };
    let Some(b) = (v as u128 * r as u128 / k as u128).try_into().ok() else { return none };
    DerivedParams { family: Family::GeneralQ { q, n }, counts: Some(FamilyCounts { d: b, s: v, v, b }) }
}

/// One row of the matrix: its 1-based index and the sorted 1-based columns
/// holding a one.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Row {
    pub index: usize,
    pub points: Vec<usize>,
}

impl Row {
    pub fn new(index: usize, points: Vec<usize>) -> Result<Self> {
        if index == 0 {
            return Err(Error::InvalidArgument("row indices are 1-based".into()));
        }
        if points.first() == Some(&0) || points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(format!(
                "row points must be strictly increasing and >= 1, got {points:?}"
            )));
        }
        Ok(Self { index, points })
    }

    pub fn contains(&self, column: usize) -> bool {
        self.points.binary_search(&column).is_ok()
    }

    /// The row moved `offset` columns to the right.
    pub fn shifted(&self, offset: usize) -> Vec<usize> {
        self.points.iter().map(|p| p + offset).collect()
    }
}

/// Mutable generation state: emitted rows, column degrees and the
/// covered-pair relation. Internally columns are 0-based.
#[derive(Debug, Clone)]
pub struct GeneratorState {
    k: usize,
    r: usize,
    rows: Vec<Row>,
    degree: Vec<usize>,
    covered: Vec<BitSet>,
    /// Lowest 0-based column whose degree is still below `r`.
    first_open: usize,
}

impl GeneratorState {
    fn new(k: usize, r: usize) -> Self {
        Self { k, r, rows: Vec::new(), degree: Vec::new(), covered: Vec::new(), first_open: 0 }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Row> {
        self.rows
    }

    /// Largest column used by any emitted row (0 when none).
    pub fn max_used_column(&self) -> usize {
        self.degree.len()
    }

    /// Number of emitted rows containing `column`.
    pub fn column_degree(&self, column: usize) -> usize {
        column.checked_sub(1).and_then(|c| self.degree.get(c)).copied().unwrap_or(0)
    }

    /// A column is complete once its degree has reached `r`.
    pub fn is_complete(&self, column: usize) -> bool {
        self.column_degree(column) == self.r
    }

    /// Whether some emitted row contains both columns.
    pub fn connectable(&self, x: usize, y: usize) -> Result<bool> {
        if x == y {
            return Err(Error::InvalidArgument(format!("connectable needs distinct points, got {x} twice")));
        }
        if x == 0 || y == 0 {
            return Err(Error::InvalidArgument("columns are 1-based".into()));
        }
        Ok(self.covered_0(x - 1, y - 1))
    }

    /// Columns (1-based) sharing a row with `column`.
    pub fn neighbours(&self, column: usize) -> Vec<usize> {
        column
            .checked_sub(1)
            .and_then(|c| self.covered.get(c))
            .map(|set| set.iter().map(|c| c + 1).collect())
            .unwrap_or_default()
    }

    #[inline]
    fn covered_0(&self, x: usize, y: usize) -> bool {
        self.covered.get(x).is_some_and(|set| set.contains(y))
    }

    #[inline]
    fn degree_0(&self, x: usize) -> usize {
        self.degree.get(x).copied().unwrap_or(0)
    }

    /// The next row under the three blocking conditions, without committing it.
    fn propose(&self, cap: usize) -> Result<Vec<usize>> {
        let mut placed: Vec<usize> = Vec::with_capacity(self.k);
        let mut j = self.first_open;
        while placed.len() < self.k {
            if j >= cap {
                return Err(Error::RowIncomplete { row: self.rows.len() + 1, cap });
            }
            if self.degree_0(j) < self.r && placed.iter().all(|&p| !self.covered_0(p, j)) {
                placed.push(j);
            }
            j += 1;
        }
        Ok(placed)
    }

    fn commit(&mut self, placed: &[usize]) -> Row {
        let top = *placed.last().expect("rows are non-empty");
        if self.degree.len() <= top {
            self.degree.resize(top + 1, 0);
            self.covered.resize_with(top + 1, BitSet::new);
        }
        for (i, &x) in placed.iter().enumerate() {
            self.degree[x] += 1;
            for &y in &placed[i + 1..] {
                self.covered[x].insert(y);
                self.covered[y].insert(x);
            }
        }
        while self.degree_0(self.first_open) >= self.r {
            self.first_open += 1;
        }
        let row = Row { index: self.rows.len() + 1, points: placed.iter().map(|c| c + 1).collect() };
        self.rows.push(row.clone());
        row
    }
}

/// Row-by-row generator. Also an iterator yielding up to `max_rows` rows.
#[derive(Debug, Clone)]
pub struct Generator {
    params: GenParams,
    state: GeneratorState,
}

impl Generator {
    pub fn new(params: GenParams) -> Self {
        Self { params, state: GeneratorState::new(params.k, params.r) }
    }

    pub fn params(&self) -> &GenParams {
        &self.params
    }

    pub fn state(&self) -> &GeneratorState {
        &self.state
    }

    pub fn into_state(self) -> GeneratorState {
        self.state
    }

    /// Computes the next row without advancing the state.
    pub fn peek(&self) -> Result<Row> {
        let placed = self.state.propose(self.params.column_cap)?;
        Ok(Row { index: self.state.rows.len() + 1, points: placed.iter().map(|c| c + 1).collect() })
    }

    pub fn next_row(&mut self) -> Result<Row> {
        if self.state.rows.len() >= self.params.max_rows {
            return Err(Error::InvalidArgument(format!(
                "row limit of {} already reached",
                self.params.max_rows
            )));
        }
        let placed = self.state.propose(self.params.column_cap)?;
        Ok(self.state.commit(&placed))
    }

    /// Generates the remaining rows, calling `hook` with the state and the
    /// upcoming row before each row is committed. `Break` stops early.
    pub fn run_with<F>(&mut self, mut hook: F) -> Result<()>
    where
        F: FnMut(&GeneratorState, &Row) -> ControlFlow<()>,
    {
        while self.state.rows.len() < self.params.max_rows {
            let row = self.peek()?;
            if hook(&self.state, &row).is_break() {
                break;
            }
            let placed: Vec<usize> = row.points.iter().map(|p| p - 1).collect();
            self.state.commit(&placed);
        }
        Ok(())
    }
}

impl Iterator for Generator {
    type Item = Result<Row>;

    fn next(&mut self) -> Option<Result<Row>> {
        (self.state.rows.len() < self.params.max_rows).then(|| self.next_row())
    }
}

/// The first `max_rows` rows of the naive matrix.
pub fn generate(params: GenParams) -> Result<Vec<Row>> {
    let mut generator = Generator::new(params);
    generator.run_with(|_, _| ControlFlow::Continue(()))?;
    Ok(generator.into_state().into_rows())
}

/// Matrix entry `a[i][j]` (1-based) within the generated rows.
pub fn entry(rows: &[Row], i: usize, j: usize) -> Result<u8> {
    let row = i
        .checked_sub(1)
        .and_then(|i| rows.get(i))
        .ok_or_else(|| Error::InvalidArgument(format!("row {i} outside the {} generated rows", rows.len())))?;
    Ok(row.contains(j) as u8)
}
