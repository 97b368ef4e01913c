//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

/// Next k-combination of `1..=n` in lexicographic order.
fn advance(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - (k - 1 - i) {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn admissible(set: &[usize], rows: &[Vec<usize>], r: usize) -> bool {
    let degree_ok = set.iter().all(|x| rows.iter().filter(|row| row.contains(x)).count() < r);
    let pairs_ok = set.iter().enumerate().all(|(i, x)| {
        set[i + 1..].iter().all(|y| !rows.iter().any(|row| row.contains(x) && row.contains(y)))
    });
    degree_ok && pairs_ok
}

/// Rows chosen one at a time as the lexicographically least k-subset that
/// keeps every column degree <= r and every pair in at most one row.
/// Subsets are drawn from `1..=max_used + k`; any admissible set below that
/// bound precedes the all-fresh set `{max_used+1, ..., max_used+k}`.
pub fn lexmin_rows(k: usize, r: usize, count: usize) -> Vec<Vec<usize>> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    for _ in 0..count {
        let bound = rows.iter().flatten().copied().max().unwrap_or(0) + k;
        let mut combo: Vec<usize> = (1..=k).collect();
        loop {
            if admissible(&combo, &rows, r) {
                rows.push(combo);
                break;
            }
            assert!(advance(&mut combo, bound), "no admissible set below {bound}");
        }
    }
    rows
}

/// Number of 2-dimensional subspaces of GF(2)^dim: xor-closed 4-subsets of
/// `[0, 2^dim)` containing 0.
pub fn binary_planes(dim: u32) -> u64 {
    let limit = 1u32 << dim;
    let mut count = 0;
    for x in 1..limit {
        for y in x + 1..limit {
            for z in y + 1..limit {
                let set = [0, x, y, z];
                if set.iter().all(|&a| set.iter().all(|&b| set.contains(&(a ^ b)))) {
                    count += 1;
                }
            }
        }
    }
    count
}
