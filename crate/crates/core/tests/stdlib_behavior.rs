//! The built-in functions and the bundled pattern-matching library, checked
//! one behavior at a time, plus agreement between the two `map`/`take`
//! implementations.

mod common;

use common::*;
use nfm_core::{EvalError, RunError};

#[test]
fn arithmetic_folds_left() {
    assert_eq!(eval_one("(+ 1 2 3 4)"), "10");
    assert_eq!(eval_one("(- 10 3 2)"), "5");
    assert_eq!(eval_one("(* 2 3 4)"), "24");
    assert_eq!(eval_one("(mod 7 3)"), "1");
    assert_eq!(eval_one("(+ -5 2)"), "-3");
}

#[test]
fn comparisons_yield_booleans() {
    assert_eq!(eval_one("(eq? 2 2)"), "<True>");
    assert_eq!(eval_one("(eq? 2 3)"), "<False>");
    assert_eq!(eval_one("(lt? 1 2)"), "<True>");
    assert_eq!(eval_one("(lte? 2 2)"), "<True>");
    assert_eq!(eval_one("(gt? 2 2)"), "<False>");
    assert_eq!(eval_one("(gte? 3 2)"), "<True>");
}

#[test]
fn if_evaluates_one_branch() {
    assert_eq!(eval_one("(if (lt? 1 2) 10 20)"), "10");
    assert_eq!(eval_one("(if (lt? 2 1) 10 20)"), "20");
    // The untaken branch stays suspended.
    assert_eq!(eval_one("(if <True> 1 nosuchvariable)"), "1");
}

#[test]
fn take_stops_at_the_count_or_the_end() {
    assert_eq!(eval_one("(take 2 {1 2 3})"), "{1 2}");
    assert_eq!(eval_one("(take 9 {1 2 3})"), "{1 2 3}");
    assert_eq!(eval_one("(take 0 {1 2 3})"), "{}");
    assert_eq!(eval_one("(take 4 nats)"), "{1 2 3 4}");
}

#[test]
fn take_rejects_negative_counts() {
    let mut ses = session();
    match ses.run_source("(take -1 {1 2})") {
        Err(RunError::Eval(EvalError::NegativeCount(n))) => assert_eq!(n, "-1"),
        other => panic!("expected NegativeCount, got {other:?}"),
    }
}

#[test]
fn append_concatenates_lazily() {
    assert_eq!(eval_one("(append {1 2} {3 4})"), "{1 2 3 4}");
    assert_eq!(eval_one("(append {} {1})"), "{1}");
    assert_eq!(eval_one("(take 3 (append {1 2} nats))"), "{1 2 1}");
}

#[test]
fn map_accepts_either_argument_order() {
    assert_eq!(eval_one("(map (lambda [$x] (+ x 1)) {1 2 3})"), "{2 3 4}");
    assert_eq!(eval_one("(map {1 2 3} (lambda [$x] (+ x 1)))"), "{2 3 4}");
    assert_eq!(eval_one("(take 3 (map (lambda [$x] (* x x)) nats))"), "{1 4 9}");
}

#[test]
fn membership_uses_nonlinear_matching() {
    assert_eq!(eval_one("(member? 2 {1 2 3})"), "<True>");
    assert_eq!(eval_one("(member? 5 {1 2 3})"), "<False>");
    assert_eq!(eval_one("(member? 1 {})"), "<False>");
}

#[test]
fn delete_removes_the_leftmost_occurrence() {
    assert_eq!(eval_one("(delete 2 {1 2 3 2})"), "{1 3 2}");
    assert_eq!(eval_one("(delete 9 {1 2})"), "{1 2}");
    assert_eq!(eval_one("(delete 1 {1 1})"), "{1}");
}

#[test]
fn naturals_and_primes_stream_from_the_start() {
    assert_eq!(eval_one("(take 6 nats)"), "{1 2 3 4 5 6}");
    assert_eq!(eval_one("(take 6 primes)"), "{2 3 5 7 11 13}");
}

#[test]
fn library_map_and_take_agree_with_the_builtins() {
    let mut ses = session();
    for n in 0..=6 {
        let xs: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let coll = format!("{{{}}}", xs.join(" "));
        let builtin_map = ses
            .run_source(&format!("(map (lambda [$x] (* x 10)) {coll})"))
            .unwrap();
        let library_map = ses
            .run_source(&format!("(map-pm {coll} (lambda [$x] (* x 10)))"))
            .unwrap();
        assert_eq!(builtin_map, library_map, "map over {coll}");
        for k in 0..=n {
            let builtin_take = ses.run_source(&format!("(take {k} {coll})")).unwrap();
            let library_take = ses.run_source(&format!("(take-pm {k} {coll})")).unwrap();
            assert_eq!(builtin_take, library_take, "take {k} of {coll}");
        }
    }
    // The library take also works on an infinite collection.
    assert_eq!(eval_one("(take-pm 3 nats)"), "{1 2 3}");
}
