//! Canonical PG(n, q) models, Pasch checks and isomorphism search.
//!
//! cargo run -p naive-matrix --example isomorphism

use naive_matrix::geometry::{build_pg, build_pg2_nim, check_design, check_veblen_young, isomorphic, IsoOutcome};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> naive_matrix::Result<()> {
    let pg = build_pg(2, 4)?;
    let counts = pg.counts();
    println!("PG(2,4): v={} b={} r={} k={}", counts.v, counts.b, counts.r, counts.k);
    println!("first points: {:?}", &pg.points[..4]);

    let s = pg.to_incidence();
    println!("design: {}", check_design(&s, 21, 5, 5, 1).status);
    println!("pasch:  {}", check_veblen_young(&s)?.status);

    let mut perm: Vec<usize> = (1..=21).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(42));
    let scrambled = s.relabeled(&perm)?;
    match isomorphic(&s, &scrambled, 1_000_000) {
        IsoOutcome::Isomorphic(map) => println!("recovered bijection: {map:?}"),
        other => println!("unexpected: {other:?}"),
    }

    let nim = build_pg2_nim(3)?;
    let canonical = build_pg(3, 2)?.to_incidence();
    println!("PG(3,2) canonical vs nim triples identical: {}", canonical.lines() == nim.lines());
    Ok(())
}
