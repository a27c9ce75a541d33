//! Value-pattern equality as each matcher defines it: positional for lists,
//! multiplicity-respecting for multisets, membership-only for sets, and
//! structural under `eq`.

mod common;

use common::*;
use nfm_core::matchers::value_equal;
use nfm_core::value::MatcherVal;
use nfm_core::{EvalError, Session};
use proptest::prelude::*;

fn eq_under(ses: &Session, matcher: &str, a: &str, b: &str) -> Result<bool, EvalError> {
    let m = matcher_of(ses, matcher);
    let va = value_of(ses, a);
    let vb = value_of(ses, b);
    value_equal(&m, &va, &vb)
}

#[test]
fn integers_compare_numerically() {
    let ses = session();
    assert_eq!(eq_under(&ses, "integer", "3", "3"), Ok(true));
    assert_eq!(eq_under(&ses, "integer", "3", "4"), Ok(false));
    assert_eq!(eq_under(&ses, "integer", "(+ 1 2)", "3"), Ok(true));
}

#[test]
fn lists_compare_in_order() {
    let ses = session();
    let m = "(list integer)";
    assert_eq!(eq_under(&ses, m, "{1 2 3}", "{1 2 3}"), Ok(true));
    assert_eq!(eq_under(&ses, m, "{1 2 3}", "{1 3 2}"), Ok(false));
    assert_eq!(eq_under(&ses, m, "{1 2}", "{1 2 3}"), Ok(false));
    assert_eq!(eq_under(&ses, m, "{}", "{}"), Ok(true));
}

#[test]
fn multisets_compare_up_to_permutation() {
    let ses = session();
    let m = "(multiset integer)";
    assert_eq!(eq_under(&ses, m, "{1 2 2}", "{2 1 2}"), Ok(true));
    assert_eq!(eq_under(&ses, m, "{1 2}", "{1 2 2}"), Ok(false));
    assert_eq!(eq_under(&ses, m, "{1 2 2}", "{1 1 2}"), Ok(false));
}

#[test]
fn sets_ignore_order_and_multiplicity() {
    let ses = session();
    let m = "(set integer)";
    assert_eq!(eq_under(&ses, m, "{1 1 2}", "{2 1}"), Ok(true));
    assert_eq!(eq_under(&ses, m, "{1 3}", "{1 2}"), Ok(false));
    assert_eq!(eq_under(&ses, m, "{}", "{}"), Ok(true));
    assert_eq!(eq_under(&ses, m, "{1}", "{}"), Ok(false));
}

#[test]
fn tuples_compare_componentwise() {
    let ses = session();
    let m = "[integer (multiset integer)]";
    assert_eq!(eq_under(&ses, m, "[1 {1 2}]", "[1 {2 1}]"), Ok(true));
    assert_eq!(eq_under(&ses, m, "[1 {1 2}]", "[2 {1 2}]"), Ok(false));
    assert_eq!(eq_under(&ses, m, "[1 {1 2}]", "[1 {1 3}]"), Ok(false));
}

#[test]
fn eq_matcher_is_structural() {
    let ses = session();
    assert_eq!(eq_under(&ses, "eq", "<True>", "<True>"), Ok(true));
    assert_eq!(eq_under(&ses, "eq", "<True>", "<False>"), Ok(false));
    assert_eq!(eq_under(&ses, "eq", "{1 2}", "{1 2}"), Ok(true));
    // Structural order matters under eq, unlike the multiset matcher.
    assert_eq!(eq_under(&ses, "eq", "{1 2}", "{2 1}"), Ok(false));
    // Functions have no syntactic equality.
    assert!(matches!(
        eq_under(&ses, "eq", "(lambda [$x] x)", "(lambda [$x] x)"),
        Err(EvalError::TypeMismatch { .. })
    ));
}

#[test]
fn something_rejects_value_comparison() {
    let ses = session();
    assert_eq!(
        eq_under(&ses, "something", "1", "1"),
        Err(EvalError::ValuePatternUnderSomething)
    );
}

#[test]
fn nested_collection_matchers_compose() {
    let ses = session();
    let m = "(multiset (multiset integer))";
    assert_eq!(eq_under(&ses, m, "{{1 2} {3}}", "{{3} {2 1}}"), Ok(true));
    assert_eq!(eq_under(&ses, m, "{{1 2} {3}}", "{{3} {1 1}}"), Ok(false));
}

#[test]
fn unordered_comparison_has_a_size_cap() {
    let ses = session();
    let big: Vec<String> = (0..65).map(|i| i.to_string()).collect();
    let src = format!("{{{}}}", big.join(" "));
    assert_eq!(
        eq_under(&ses, "(multiset integer)", &src, &src),
        Err(EvalError::EqualityTooLarge(64))
    );
    // Within the cap, large comparisons still work.
    let ok: Vec<String> = (0..64).map(|i| i.to_string()).collect();
    let src = format!("{{{}}}", ok.join(" "));
    assert_eq!(eq_under(&ses, "(multiset integer)", &src, &src), Ok(true));
}

fn multiset_model(a: &[i64], b: &[i64]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

fn set_model(a: &[i64], b: &[i64]) -> bool {
    use std::collections::BTreeSet;
    a.iter().collect::<BTreeSet<_>>() == b.iter().collect::<BTreeSet<_>>()
}

fn matcher_val(ses: &Session, kind: &str) -> MatcherVal {
    matcher_of(ses, &format!("({kind} integer)"))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn multiset_equality_matches_the_sorted_model(
        a in proptest::collection::vec(0i64..4, 0..7),
        b in proptest::collection::vec(0i64..4, 0..7),
    ) {
        let ses = session();
        let m = matcher_val(&ses, "multiset");
        let va = value_of(&ses, &collection_source(&a));
        let vb = value_of(&ses, &collection_source(&b));
        prop_assert_eq!(value_equal(&m, &va, &vb).unwrap(), multiset_model(&a, &b));
        // Symmetry without reference to the model.
        prop_assert_eq!(
            value_equal(&m, &va, &vb).unwrap(),
            value_equal(&m, &vb, &va).unwrap()
        );
        prop_assert!(value_equal(&m, &va, &va).unwrap());
    }

    #[test]
    fn set_equality_matches_the_membership_model(
        a in proptest::collection::vec(0i64..4, 0..7),
        b in proptest::collection::vec(0i64..4, 0..7),
    ) {
        let ses = session();
        let m = matcher_val(&ses, "set");
        let va = value_of(&ses, &collection_source(&a));
        let vb = value_of(&ses, &collection_source(&b));
        prop_assert_eq!(value_equal(&m, &va, &vb).unwrap(), set_model(&a, &b));
    }
}
