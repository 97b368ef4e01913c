//! Generate the first seven rows of the naive matrix of type (3, 3) and
//! inspect the generator's point predicates along the way.
//!
//! cargo run -p naive-matrix --example fano

use naive_matrix::greedy::{derive_params, entry, GenParams, Generator};

fn main() -> naive_matrix::Result<()> {
    let params = GenParams::new(3, 3, 7)?;
    println!("derived: {:?}", derive_params(&params));

    let mut generator = Generator::new(params);
    while let Some(row) = generator.next() {
        let row = row?;
        let complete: Vec<usize> = (1..=7).filter(|&p| generator.state().is_complete(p)).collect();
        println!("L{} = {:?}   complete points: {complete:?}", row.index, row.points);
    }

    let rows = generator.state().rows();
    println!("\nupper-left 7x9 corner:");
    for i in 1..=rows.len() {
        let line: Vec<String> = (1..=9).map(|j| entry(rows, i, j).map(|e| e.to_string())).collect::<Result<_, _>>()?;
        println!("  {}", line.join(" "));
    }
    println!("\n4 and 5 connectable: {}", generator.state().connectable(4, 5)?);
    Ok(())
}
