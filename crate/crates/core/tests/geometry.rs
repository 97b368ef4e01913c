use naive_matrix::geometry::{
    build_pg, build_pg2_nim, check_design, check_veblen_young, isomorphic, IncidenceStructure, IsoOutcome,
    DEFAULT_NODE_BUDGET,
};
use naive_matrix::verify::verify_general_q;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn canonical_and_nim_models_are_isomorphic() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4 {
        let canonical = build_pg(n, 2).unwrap().to_incidence();
        let nim = build_pg2_nim(n).unwrap();
        let mut perm: Vec<usize> = (1..=nim.point_count()).collect();
        perm.shuffle(&mut rng);
        let shuffled = nim.relabeled(&perm).unwrap();
        match isomorphic(&canonical, &shuffled, DEFAULT_NODE_BUDGET) {
            IsoOutcome::Isomorphic(map) => {
                assert_eq!(canonical.relabeled(&map).unwrap().canonical_lines(), shuffled.canonical_lines());
            }
            other => panic!("n = {n}: {other:?}"),
        }
    }
}

/// PG(3,2) with one Pasch configuration traded: still a 2-(15,3,1) design
/// with identical invariants, but no longer projective.
fn pasch_traded_pg32() -> IncidenceStructure {
    let pg = build_pg2_nim(3).unwrap();
    let (a, b, c, d, e) = (1, 2, 3, 4, 5);
    let f = b ^ d;
    assert_eq!(f, c ^ e);
    let old = [vec![a, b, c], vec![a, d, e], vec![b, d, f], vec![c, e, f]].map(|mut l| {
        l.sort();
        l
    });
    let new = [vec![a, b, d], vec![a, c, e], vec![b, c, f], vec![d, e, f]];
    let lines = pg.lines().iter().filter(|l| !old.contains(l)).cloned().chain(new).collect();
    IncidenceStructure::new(15, lines).unwrap()
}

#[test]
fn pasch_trade_breaks_isomorphism() {
    let pg = build_pg2_nim(3).unwrap();
    let traded = pasch_traded_pg32();
    assert!(check_design(&traded, 15, 3, 7, 1).is_pass());
    assert!(!check_veblen_young(&traded).unwrap().is_pass());
    match isomorphic(&pg, &traded, DEFAULT_NODE_BUDGET) {
        IsoOutcome::NotIsomorphic(reason) => assert!(reason.contains("exhausted"), "{reason}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn pg34_is_a_pasch_design() {
    let pg = build_pg(3, 4).unwrap().to_incidence();
    assert!(check_design(&pg, 85, 5, 21, 1).is_pass());
    assert!(check_veblen_young(&pg).unwrap().is_pass());
}

#[test]
fn general_q4_space_is_isomorphic_to_pg34() {
    let report = verify_general_q(1, 3, true).unwrap();
    assert!(report.is_pass(), "{}", report.to_json());
    assert!(report.find("isomorphic_to_pg").is_some());
}
