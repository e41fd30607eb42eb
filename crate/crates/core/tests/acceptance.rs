//! Acceptance suite: one test per criterion, each printing its pass/fail
//! line. Run with `cargo test -p cliffordian --test acceptance -- --nocapture`
//! to see the table.

use cliffordian::report::{
    criterion_cl30_display, criterion_connection_class, criterion_determinism,
    criterion_epsilon_suite, criterion_monomial_span, criterion_prolongation_vanishing,
    criterion_quaternionic_prolongation, criterion_relations, criterion_sxi_membership,
    CriterionOutcome,
};

/// The identity table committed at the repository root.
const COMMITTED_TABLE: &str = include_str!("../../../epsilon-table.json");

fn check(outcome: CriterionOutcome) {
    println!("{}", outcome.line());
    assert!(outcome.passed, "{}", outcome.line());
}

#[test]
fn criterion_1_relation_suite() {
    check(criterion_relations());
}

#[test]
fn criterion_2_cl30_display() {
    check(criterion_cl30_display());
}

#[test]
fn criterion_3_monomial_and_span() {
    check(criterion_monomial_span());
}

#[test]
fn criterion_4_prolongation_vanishing() {
    check(criterion_prolongation_vanishing());
}

#[test]
fn criterion_5_quaternionic_prolongation() {
    check(criterion_quaternionic_prolongation());
}

#[test]
fn criterion_6_sxi_membership() {
    check(criterion_sxi_membership());
}

#[test]
fn criterion_7_epsilon_suite() {
    check(criterion_epsilon_suite(Some(COMMITTED_TABLE)));
}

#[test]
fn criterion_8_connection_class() {
    check(criterion_connection_class());
}

#[test]
fn criterion_9_determinism() {
    check(criterion_determinism(Some(COMMITTED_TABLE)));
}
