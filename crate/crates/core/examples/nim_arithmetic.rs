//! Nim addition and multiplication, the greediness lemma, and the GF(4)
//! multiplication table.
//!
//! cargo run -p naive-matrix --example nim_arithmetic

use naive_matrix::nimber::{field_check, greediness_lemma_holds, nim_add, nim_mul, FermatField, FieldCheckMode, MexTable};

fn main() -> naive_matrix::Result<()> {
    println!("1 + 2 = {}", nim_add(1, 2)?);
    println!("5 + 6 = {}", nim_add(5, 6)?);
    println!("2 * 2 = {}, 2 * 3 = {}", nim_mul(2, 2)?, nim_mul(2, 3)?);
    println!("16 * 16 = {}", nim_mul(16, 16)?);
    println!("lemma (5, 6, 2): {}", greediness_lemma_holds(5, 6, 2)?);

    let gf4 = FermatField::from_order(4)?;
    println!("\nGF(4) products:");
    for x in 0..4 {
        let row: Vec<String> = (0..4).map(|y| gf4.mul(x, y).to_string()).collect();
        println!("  {}", row.join(" "));
    }

    let table = MexTable::build(16)?;
    let agree = (0..16).all(|a| (0..16).all(|b| table.get(a, b) == nim_mul(a, b).ok()));
    println!("\nmex recursion agrees with the splitting rule on [0,16)^2: {agree}");

    for q in [2, 4, 16] {
        let report = field_check(q, FieldCheckMode::Exhaustive)?;
        println!("field q={q}: {}", report.status);
    }
    Ok(())
}
