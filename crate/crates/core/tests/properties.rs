//! Seeded property suites at the sizes the acceptance run uses.

mod suites;

use suites::{algebra, groups};

#[test]
fn blown_presentations_are_hopf_and_flat() {
    assert_eq!(groups::blowups(200), Ok(200));
}

#[test]
fn groebner_bases_agree_with_linear_algebra() {
    assert_eq!(algebra::groebner_oracle(500), Ok(500));
}

#[test]
fn saturation_elimination_and_contraction() {
    assert_eq!(algebra::ideal_operations(200), Ok(200));
}

#[test]
fn factoring_morphisms_lift() {
    assert_eq!(groups::lifts(50), Ok(50));
}
