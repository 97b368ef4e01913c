//! For k = 3, r = 2^n - 1 the first d rows are exactly the nim triples
//! {a, b, a^b}. Checks n = 1..=8 and prints a summary line per n.
//!
//! cargo run -p naive-matrix --example theorem_q2

use naive_matrix::verify::verify_theorem_q2;

fn main() -> naive_matrix::Result<()> {
    println!("{:>2} {:>6} {:>4} {:>8} {:>6}", "n", "d", "s", "status", "ms");
    for n in 1..=8 {
        let report = verify_theorem_q2(n)?;
        println!(
            "{n:>2} {:>6} {:>4} {:>8} {:>6}",
            report.counts["d"], report.counts["s"], report.status, report.elapsed_ms
        );
    }
    Ok(())
}
