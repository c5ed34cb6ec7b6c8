mod common;

use common::{check_cg_ladder, check_cg_unitarity, check_six_j_symmetry, h2, ladder_oracle};
use dtensor::wigner::cg;

#[test]
fn cg_matches_ladder_oracle_up_to_two() {
    assert!(check_cg_ladder(4).unwrap() > 1000);
}

#[test]
fn cg_matches_ladder_oracle_on_larger_pairs() {
    for (j1, j2) in [(6, 6), (8, 4), (8, 8), (6, 3)] {
        for ((big_j, big_m), state) in &ladder_oracle(j1, j2) {
            for (&(m1, m2), expected) in state {
                let got = cg(h2(j1), h2(m1), h2(j2), h2(m2), h2(*big_j), h2(*big_m)).unwrap();
                assert_eq!(&got, expected);
            }
        }
    }
}

#[test]
fn cg_orthogonality_and_completeness() {
    check_cg_unitarity(8).unwrap();
}

#[test]
fn six_j_column_permutations() {
    assert!(check_six_j_symmetry(6).unwrap() > 1000);
}
