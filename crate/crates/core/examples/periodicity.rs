//! Zero blocks, the (d, s) shift periodicity, and a step-by-step replay of
//! the completeness/connectability claims behind the q = 2 identification.
//!
//! cargo run -p naive-matrix --example periodicity

use naive_matrix::greedy::{generate, GenParams};
use naive_matrix::verify::{verify_proof_invariants, verify_zero_blocks_and_periodicity};

fn main() -> naive_matrix::Result<()> {
    let rows = generate(GenParams::new(3, 3, 14)?)?;
    for row in &rows {
        println!("L{:<2} {:?}", row.index, row.points);
    }

    for n in 1..=4 {
        let report = verify_zero_blocks_and_periodicity(n, 3)?;
        println!("periodicity n={n}: {} ({} rows)", report.status, report.counts["rows"]);
    }
    for n in 1..=5 {
        let report = verify_proof_invariants(n)?;
        println!("proof invariants n={n}: {} over {} steps", report.status, report.counts["steps"]);
    }
    Ok(())
}
