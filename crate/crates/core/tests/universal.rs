use tropsing::json::{parse_polynomial, polynomial_json};
use tropsing::universal::{
    codim3_cell_test, construct_deep_cell, enumerate_witnesses, equality_rank, is_universally_singular,
};

#[test]
fn every_witness_cell_is_universal_of_rank_three() {
    for n in 2..=7 {
        for w in enumerate_witnesses(n) {
            let f = w.representative(n).unwrap();
            let verdict = codim3_cell_test(&w, &f, n).unwrap();
            assert!(verdict.holds(), "n={n} {w:?}");
            assert_eq!(equality_rank(&f, n).unwrap(), 3);
        }
    }
}

#[test]
fn deep_cell_survives_json_round_trip() {
    let cell = construct_deep_cell(2).unwrap();
    let text = serde_json::to_string(&polynomial_json(&cell.polynomial)).unwrap();
    let back = parse_polynomial(&text).unwrap();
    assert_eq!(back, cell.polynomial);
    assert!(is_universally_singular(&back, cell.n).unwrap().is_universal());
    assert_eq!(equality_rank(&back, cell.n).unwrap(), cell.rank);
}
