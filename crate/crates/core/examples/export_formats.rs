//! CSV, JSON and plain-PBM encodings of generated rows.
//!
//! cargo run -p naive-matrix --example export_formats

use naive_matrix::export::{column_bound, matrix_pbm, rows_csv, RowsDocument};
use naive_matrix::greedy::{generate, GenParams};

fn main() -> naive_matrix::Result<()> {
    let rows = generate(GenParams::new(3, 3, 7)?)?;
    let points: Vec<Vec<usize>> = rows.iter().map(|r| r.points.clone()).collect();

    print!("{}", rows_csv(&points));
    let json = RowsDocument::from_rows(3, 3, &rows).to_json();
    print!("{json}");
    print!("{}", matrix_pbm(&points, column_bound(&points)));

    let reparsed = RowsDocument::parse(&json)?;
    assert_eq!(reparsed.to_json(), json);
    Ok(())
}
