//! The Fermat 2-power experiment: generate with k = q + 1,
//! r = (q^n - 1)/(q - 1) and compare against PG(n, q).
//!
//! cargo run -p naive-matrix --example general_q

use naive_matrix::verify::verify_general_q;

fn main() -> naive_matrix::Result<()> {
    for (a, n, iso) in [(0, 3, true), (1, 2, true), (1, 3, true), (2, 2, false)] {
        let report = verify_general_q(a, n, iso)?;
        println!("{}: {} in {} ms", report.subject, report.status, report.elapsed_ms);
        for check in &report.checks {
            println!("    {:<32} {}", check.name, check.status);
        }
        if let Some(literal) = report.counts.get("rows_matching_canonical_labels") {
            println!("    rows equal to canonical lines under identity labels: {literal}/{}", report.counts["b"]);
        }
    }
    Ok(())
}
