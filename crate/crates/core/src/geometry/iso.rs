//! Isomorphism of incidence structures by invariant refinement and
//! backtracking with forward checking.

use std::collections::HashSet;

use super::IncidenceStructure;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoOutcome {
    /// `map[p - 1]` is the image of point `p`; lines map onto lines.
    Isomorphic(Vec<usize>),
    NotIsomorphic(String),
    /// The search was cut off; nothing is known.
    BudgetExceeded { nodes: u64 },
}

impl IsoOutcome {
    pub fn mapping(&self) -> Option<&[usize]> {
        match self {
            IsoOutcome::Isomorphic(map) => Some(map),
            _ => None,
        }
    }
}

const UNSET: usize = usize::MAX;

/// Per-point refinement signature: degree and sorted sizes of the lines
/// through the point.
type Signature = (usize, Vec<usize>);

struct Side<'a> {
    s: &'a IncidenceStructure,
    through: Vec<Vec<usize>>,
    line_bits: Vec<Vec<u64>>,
    signatures: Vec<Signature>,
}

impl<'a> Side<'a> {
    fn new(s: &'a IncidenceStructure) -> Self {
        let through = s.incidence();
        let words = s.point_count().div_ceil(64);
        let line_bits = s
            .lines()
            .iter()
            .map(|line| {
                let mut bits = vec![0u64; words];
                for &p in line {
                    bits[(p - 1) / 64] |= 1 << ((p - 1) % 64);
                }
                bits
            })
            .collect();
        let signatures = through
            .iter()
            .map(|ls| {
                let mut sizes: Vec<usize> = ls.iter().map(|&l| s.lines()[l].len()).collect();
                sizes.sort_unstable();
                (ls.len(), sizes)
            })
            .collect();
        Self { s, through, line_bits, signatures }
    }

    fn on_line(&self, line: usize, point: usize) -> bool {
        self.line_bits[line][point / 64] & (1 << (point % 64)) != 0
    }
}

/// Whether sending `x` (of `from`) to `y` (of `to`) keeps every partially
/// mapped line of `from` through `x` inside some equal-size line through `y`.
fn consistent(from: &Side, to: &Side, map: &[usize], x: usize, y: usize, images: &mut Vec<usize>) -> bool {
    for &l in &from.through[x] {
        let line = &from.s.lines()[l];
        images.clear();
        images.extend(line.iter().map(|&p| map[p - 1]).filter(|&img| img != UNSET));
        if images.is_empty() {
            continue;
        }
        let fits = to.through[y]
            .iter()
            .any(|&m| to.s.lines()[m].len() == line.len() && images.iter().all(|&img| to.on_line(m, img)));
        if !fits {
            return false;
        }
    }
    true
}

struct Search<'a> {
    left: Side<'a>,
    right: Side<'a>,
    right_lines: HashSet<&'a [usize]>,
    map: Vec<usize>,
    inverse: Vec<usize>,
    nodes: u64,
    budget: u64,
    scratch: Vec<usize>,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn admissible(&mut self, x: usize, y: usize) -> bool {
        self.inverse[y] == UNSET
            && self.left.signatures[x] == self.right.signatures[y]
            && consistent(&self.left, &self.right, &self.map, x, y, &mut self.scratch)
            && consistent(&self.right, &self.left, &self.inverse, y, x, &mut self.scratch)
    }

    /// Unassigned left point with the fewest admissible images.
    fn most_constrained(&mut self) -> Option<(usize, Vec<usize>)> {
        let v = self.map.len();
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in 0..v {
            if self.map[x] != UNSET {
                continue;
            }
            let mut candidates = Vec::new();
            for y in 0..v {
                if self.admissible(x, y) {
                    candidates.push(y);
                    if best.as_ref().is_some_and(|(_, c)| candidates.len() >= c.len()) {
                        break;
                    }
                }
            }
            if best.as_ref().is_none_or(|(_, c)| candidates.len() < c.len()) {
                let done = candidates.len() <= 1;
                best = Some((x, candidates));
                if done {
                    break;
                }
            }
        }
        best
    }

    fn full_check(&self) -> bool {
        self.left.s.lines().iter().all(|line| {
            let mut image: Vec<usize> = line.iter().map(|&p| self.map[p - 1] + 1).collect();
            image.sort_unstable();
            self.right_lines.contains(image.as_slice())
        })
    }

    fn run(&mut self) -> Step {
        let Some((x, candidates)) = self.most_constrained() else {
            return if self.full_check() { Step::Found } else { Step::Exhausted };
        };
        for y in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            self.map[x] = y;
            self.inverse[y] = x;
            match self.run() {
                Step::Exhausted => {}
                other => return other,
            }
            self.map[x] = UNSET;
            self.inverse[y] = UNSET;
        }
        Step::Exhausted
    }
}

fn sorted<T: Ord + Clone>(items: impl Iterator<Item = T>) -> Vec<T> {
    let mut v: Vec<T> = items.collect();
    v.sort();
    v
}

/// Searches for a point bijection mapping the lines of `a` onto those of `b`,
/// visiting at most `node_budget` search nodes.
pub fn isomorphic(a: &IncidenceStructure, b: &IncidenceStructure, node_budget: u64) -> IsoOutcome {
    if a.point_count() != b.point_count() {
        return IsoOutcome::NotIsomorphic(format!("point counts {} vs {}", a.point_count(), b.point_count()));
    }
    if a.lines().len() != b.lines().len() {
        return IsoOutcome::NotIsomorphic(format!("line counts {} vs {}", a.lines().len(), b.lines().len()));
    }
    if sorted(a.lines().iter().map(Vec::len)) != sorted(b.lines().iter().map(Vec::len)) {
        return IsoOutcome::NotIsomorphic("line-size multisets differ".into());
    }
    let left = Side::new(a);
    let right = Side::new(b);
    if sorted(left.signatures.iter().cloned()) != sorted(right.signatures.iter().cloned()) {
        return IsoOutcome::NotIsomorphic("point signatures (degree, line sizes) differ".into());
    }
    let v = a.point_count();
    let mut search = Search {
        right_lines: b.lines().iter().map(Vec::as_slice).collect(),
        left,
        right,
        map: vec![UNSET; v],
        inverse: vec![UNSET; v],
        nodes: 0,
        budget: node_budget,
        scratch: Vec::new(),
    };
    match search.run() {
        Step::Found => IsoOutcome::Isomorphic(search.map.iter().map(|y| y + 1).collect()),
        Step::Exhausted => IsoOutcome::NotIsomorphic(format!("search exhausted after {} nodes", search.nodes)),
        Step::OutOfBudget => IsoOutcome::BudgetExceeded { nodes: search.nodes - 1 },
    }
}
