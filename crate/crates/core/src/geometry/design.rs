use rayon::prelude::*;

use super::IncidenceStructure;
use crate::report::VerificationReport;
use crate::{Error, Result};

/// Size limits for the Pasch check's lookup tables.
const PASCH_MAX_POINTS: usize = 2048;
const PASCH_MAX_LINES: usize = 16_384;

/// Checks that `s` is a 2-`(v, k, lambda)` design with replication `r`.
/// Every condition is reported; failures carry the first witness.
pub fn check_design(s: &IncidenceStructure, v: usize, k: usize, r: usize, lambda: usize) -> VerificationReport {
    let mut report = VerificationReport::new(format!("design 2-({v},{k},{lambda}) r={r}"));
    let b = s.lines().len();
    report.count("v", v).count("k", k).count("r", r).count("lambda", lambda).count("b", b);

    report.check(
        "point_window",
        (s.point_count() != v).then(|| format!("structure has {} points, expected {v}", s.point_count())),
    );
    report.check(
        "count_identity",
        (b * k != v * r).then(|| format!("b*k = {b}*{k} = {} but v*r = {v}*{r} = {}", b * k, v * r)),
    );
    report.check(
        "line_size",
        s.lines()
            .iter()
            .position(|l| l.len() != k)
            .map(|i| format!("line {} {:?} has {} points", i + 1, s.lines()[i], s.lines()[i].len())),
    );

    let window = v.min(s.point_count());
    let degrees = s.degrees();
    report.check(
        "point_degree",
        (1..=v)
            .find(|&p| degrees.get(p - 1).copied().unwrap_or(0) != r)
            .map(|p| format!("point {p} lies on {} lines", degrees.get(p - 1).copied().unwrap_or(0))),
    );

    let through = s.incidence();
    let pair_witness = (1..=window).into_par_iter().find_map_first(|x| {
        let mut hits = vec![0usize; window + 1];
        for &l in &through[x - 1] {
            for &y in &s.lines()[l] {
                if y <= window {
                    hits[y] += 1;
                }
            }
        }
        (x + 1..=window)
            .find(|&y| hits[y] != lambda)
            .map(|y| format!("pair ({x}, {y}) covered {} times", hits[y]))
    });
    let pair_witness =
        pair_witness.or_else(|| (window < v && lambda > 0).then(|| format!("pair (1, {v}) covered 0 times")));
    report.check("pair_coverage", pair_witness);
    report.finish()
}

/// Checks the Veblen–Young (Pasch) axiom on a linear space: whenever a line
/// meets two sides `AB`, `AC` of a triangle off the vertices, it meets `BC`.
///
/// Equivalently: for distinct lines `L1`, `L2` through `A`, points
/// `B ≠ D` on `L1 \ {A}` and `C ≠ E` on `L2 \ {A}`, lines `BC` and `DE`
/// intersect.
pub fn check_veblen_young(s: &IncidenceStructure) -> Result<VerificationReport> {
    if let Some((x, y, hits)) = s.first_non_unique_pair() {
        return Err(Error::Precondition(format!(
            "not a linear space: points {x} and {y} share {hits} lines"
        )));
    }
    let v = s.point_count();
    let b = s.lines().len();
    if v > PASCH_MAX_POINTS || b > PASCH_MAX_LINES {
        return Err(Error::Resource(format!(
            "Pasch check limited to {PASCH_MAX_POINTS} points and {PASCH_MAX_LINES} lines, got {v} and {b}"
        )));
    }
    let mut report = VerificationReport::new("veblen-young");
    report.count("v", v).count("b", b);

    let mut line_of = vec![u32::MAX; v * v];
    for (l, line) in s.lines().iter().enumerate() {
        for &x in line {
            for &y in line {
                line_of[(x - 1) * v + (y - 1)] = l as u32;
            }
        }
    }
    let through = s.incidence();
    let mut meets = vec![0u64; (b * b).div_ceil(64)];
    for lines in &through {
        for &l1 in lines {
            for &l2 in lines {
                let bit = l1 * b + l2;
                meets[bit / 64] |= 1 << (bit % 64);
            }
        }
    }
    let line = |x: usize, y: usize| line_of[(x - 1) * v + (y - 1)] as usize;
    let meet = |l1: usize, l2: usize| {
        let bit = l1 * b + l2;
        meets[bit / 64] & (1 << (bit % 64)) != 0
    };

    let witness = (1..=v).into_par_iter().find_map_first(|a| {
        let lines = &through[a - 1];
        for (i, &l1) in lines.iter().enumerate() {
            for &l2 in &lines[i + 1..] {
                let side1: Vec<usize> = s.lines()[l1].iter().copied().filter(|&p| p != a).collect();
                let side2: Vec<usize> = s.lines()[l2].iter().copied().filter(|&p| p != a).collect();
                // (B, C, D, E) and (D, E, B, C) give the same condition, so B < D.
                for (bi, &pb) in side1.iter().enumerate() {
                    for &pd in &side1[bi + 1..] {
                        for &pc in &side2 {
                            let bc = line(pb, pc);
                            for &pe in &side2 {
                                if pe != pc && !meet(bc, line(pd, pe)) {
                                    return Some(format!(
                                        "A={a} B={pb} C={pc} D={pd} E={pe}: line DE misses line BC"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    });
    report.check("pasch", witness);
    Ok(report.finish())
}
