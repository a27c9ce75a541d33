//! Brute-force enumeration of pattern-match results over small concrete
//! integer collections, by direct recursion with no thunks, streams, or
//! scheduler. Tests compare the engine's results against this module as
//! multisets of binding maps.

use crate::error::EvalError;
use crate::value::{EvalResult, StreamIter, Value};
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

/// The pattern shapes the comparison battery uses. `Val(x, k)` stands for
/// the value pattern `,(+ x k)` (`k = 0` is plain `,x`).
#[derive(Clone, Debug)]
pub enum OPat {
    Wild,
    Var(&'static str),
    Val(&'static str, i64),
    Nil,
    Cons(Box<OPat>, Box<OPat>),
    Join(Box<OPat>, Box<OPat>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OKind {
    List,
    Multiset,
    Set,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OVal {
    Int(i64),
    Coll(Vec<OVal>),
}

pub type OBinds = BTreeMap<&'static str, OVal>;

/// All binding maps for `pat` against `target`, threading bindings left to
/// right. Mirrors the committed decomposition semantics by direct
/// definition on vectors; result order is unspecified (compare as
/// multisets).
pub fn enumerate(
    kind: OKind,
    pat: &OPat,
    target: &[i64],
    cap: usize,
) -> Result<Vec<OBinds>, EvalError> {
    if target.len() > cap {
        return Err(EvalError::OracleTooLarge(cap));
    }
    Ok(go(kind, pat, target, &OBinds::new()))
}

fn go(kind: OKind, pat: &OPat, target: &[i64], env: &OBinds) -> Vec<OBinds> {
    match pat {
        OPat::Wild => vec![env.clone()],
        OPat::Var(n) => bind(env, n, OVal::Coll(target.iter().map(|&x| OVal::Int(x)).collect())),
        OPat::Val(n, k) => match env.get(n) {
            Some(OVal::Coll(xs)) => {
                assert_eq!(*k, 0, "no arithmetic on collection values");
                let want: Vec<i64> = xs
                    .iter()
                    .map(|v| match v {
                        OVal::Int(i) => *i,
                        OVal::Coll(_) => panic!("flat collections only"),
                    })
                    .collect();
                if colls_equal(kind, &want, target) {
                    vec![env.clone()]
                } else {
                    Vec::new()
                }
            }
            _ => panic!("value pattern references unbound or scalar variable"),
        },
        OPat::Nil => {
            if target.is_empty() {
                vec![env.clone()]
            } else {
                Vec::new()
            }
        }
        OPat::Cons(p1, p2) => match kind {
            OKind::List => {
                let Some((&head, tail)) = target.split_first() else {
                    return Vec::new();
                };
                elem(p1, head, env)
                    .iter()
                    .flat_map(|e| go(kind, p2, tail, e))
                    .collect()
            }
            OKind::Multiset => {
                let mut out = Vec::new();
                for j in 0..target.len() {
                    let mut rest = target.to_vec();
                    rest.remove(j);
                    for e in elem(p1, target[j], env) {
                        out.extend(go(kind, p2, &rest, &e));
                    }
                }
                out
            }
            OKind::Set => {
                let mut out = Vec::new();
                for &x in target {
                    for e in elem(p1, x, env) {
                        out.extend(go(kind, p2, target, &e));
                    }
                }
                out
            }
        },
        OPat::Join(p1, p2) => match kind {
            OKind::List => {
                let mut out = Vec::new();
                for k in 0..=target.len() {
                    for e in go(kind, p1, &target[..k], env) {
                        out.extend(go(kind, p2, &target[k..], &e));
                    }
                }
                out
            }
            OKind::Multiset | OKind::Set => {
                let mut out = Vec::new();
                for mask in 0u32..1 << target.len() {
                    let mut sel = Vec::new();
                    let mut unsel = Vec::new();
                    for (i, &x) in target.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            sel.push(x);
                        } else {
                            unsel.push(x);
                        }
                    }
                    let second: &[i64] = if kind == OKind::Set { target } else { &unsel };
                    for e in go(kind, p1, &sel, env) {
                        out.extend(go(kind, p2, second, &e));
                    }
                }
                out
            }
        },
    }
}

fn elem(pat: &OPat, x: i64, env: &OBinds) -> Vec<OBinds> {
    match pat {
        OPat::Wild => vec![env.clone()],
        OPat::Var(n) => bind(env, n, OVal::Int(x)),
        OPat::Val(n, k) => match env.get(n) {
            Some(OVal::Int(v)) => {
                if v + k == x {
                    vec![env.clone()]
                } else {
                    Vec::new()
                }
            }
            _ => panic!("value pattern references unbound or collection variable"),
        },
        other => panic!("collection pattern {other:?} at element position"),
    }
}

fn bind(env: &OBinds, name: &'static str, v: OVal) -> Vec<OBinds> {
    assert!(!env.contains_key(name), "duplicate binding of {name}");
    let mut e = env.clone();
    e.insert(name, v);
    vec![e]
}

fn colls_equal(kind: OKind, a: &[i64], b: &[i64]) -> bool {
    match kind {
        OKind::List => a == b,
        OKind::Multiset => {
            let mut x = a.to_vec();
            let mut y = b.to_vec();
            x.sort_unstable();
            y.sort_unstable();
            x == y
        }
        OKind::Set => {
            a.iter().all(|v| b.contains(v)) && b.iter().all(|v| a.contains(v))
        }
    }
}

/// Independent re-derivation of the multiset semantics: run the list
/// enumeration over every permutation of position-tagged elements, then
/// deduplicate by tagged content. Tags make duplicate elements distinct,
/// so result multiplicities survive the deduplication.
///
/// Wildcards and value patterns leave no trace in the bindings, which would
/// fold distinct selections together, so they are first rewritten to fresh
/// variables (a value pattern also gets an equality filter applied after the
/// match). Fresh variables join the deduplication key and are stripped from
/// the output.
pub fn multiset_by_permutation(
    pat: &OPat,
    target: &[i64],
    cap: usize,
) -> Result<Vec<OBinds>, EvalError> {
    if target.len() > cap {
        return Err(EvalError::OracleTooLarge(cap));
    }
    let mut rw = Rewriter::default();
    let pat = rw.rewrite(pat);
    let tagged: Vec<(usize, i64)> = target.iter().copied().enumerate().collect();
    let mut seen: Vec<Vec<(&'static str, TaggedVal)>> = Vec::new();
    let mut out = Vec::new();
    for perm in permutations(&tagged) {
        'results: for binds in tagged_list(&pat, &perm, &Vec::new()) {
            for (fresh, orig, k) in &rw.filters {
                if !filter_holds(&binds, fresh, orig, *k) {
                    continue 'results;
                }
            }
            let mut canon = binds.clone();
            for (_, v) in canon.iter_mut() {
                if let TaggedVal::Coll(xs) = v {
                    xs.sort_unstable();
                }
            }
            canon.sort_by_key(|(n, _)| *n);
            if !seen.contains(&canon) {
                seen.push(canon);
                out.push(strip_tags_except(&binds, &rw.fresh_names()));
            }
        }
    }
    Ok(out)
}

const FRESH_POOL: [&str; 16] = [
    "~0", "~1", "~2", "~3", "~4", "~5", "~6", "~7", "~8", "~9", "~10", "~11", "~12", "~13",
    "~14", "~15",
];

#[derive(Default)]
struct Rewriter {
    used: usize,
    /// (fresh name, referenced variable, offset): after a match, the fresh
    /// binding must equal the referenced one plus the offset.
    filters: Vec<(&'static str, &'static str, i64)>,
}

impl Rewriter {
    fn next(&mut self) -> &'static str {
        let n = FRESH_POOL[self.used];
        self.used += 1;
        n
    }

    fn fresh_names(&self) -> Vec<&'static str> {
        FRESH_POOL[..self.used].to_vec()
    }

    fn rewrite(&mut self, p: &OPat) -> OPat {
        match p {
            OPat::Wild => OPat::Var(self.next()),
            OPat::Var(n) => OPat::Var(n),
            OPat::Val(n, k) => {
                let fresh = self.next();
                self.filters.push((fresh, n, *k));
                OPat::Var(fresh)
            }
            OPat::Nil => OPat::Nil,
            OPat::Cons(a, b) => OPat::Cons(Box::new(self.rewrite(a)), Box::new(self.rewrite(b))),
            OPat::Join(a, b) => OPat::Join(Box::new(self.rewrite(a)), Box::new(self.rewrite(b))),
        }
    }
}

fn filter_holds(
    binds: &[(&'static str, TaggedVal)],
    fresh: &str,
    orig: &str,
    k: i64,
) -> bool {
    let get = |name: &str| {
        binds
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, v)| v)
            .expect("filter references bound variable")
    };
    match (get(fresh), get(orig)) {
        (TaggedVal::Int(_, a), TaggedVal::Int(_, b)) => *a == b + k,
        (TaggedVal::Coll(a), TaggedVal::Coll(b)) => {
            assert_eq!(k, 0, "no arithmetic on collection values");
            let mut x: Vec<i64> = a.iter().map(|&(_, v)| v).collect();
            let mut y: Vec<i64> = b.iter().map(|&(_, v)| v).collect();
            x.sort_unstable();
            y.sort_unstable();
            x == y
        }
        _ => panic!("value pattern compares mismatched shapes"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum TaggedVal {
    Int(usize, i64),
    Coll(Vec<(usize, i64)>),
}

impl PartialOrd for TaggedVal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TaggedVal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        format!("{self:?}").cmp(&format!("{other:?}"))
    }
}

fn tagged_list(
    pat: &OPat,
    target: &[(usize, i64)],
    env: &Vec<(&'static str, TaggedVal)>,
) -> Vec<Vec<(&'static str, TaggedVal)>> {
    match pat {
        OPat::Wild => vec![env.clone()],
        OPat::Var(n) => {
            let mut e = env.clone();
            e.push((n, TaggedVal::Coll(target.to_vec())));
            vec![e]
        }
        OPat::Val(..) => panic!("value patterns at collection position unsupported here"),
        OPat::Nil => {
            if target.is_empty() {
                vec![env.clone()]
            } else {
                Vec::new()
            }
        }
        OPat::Cons(p1, p2) => {
            let Some((&head, tail)) = target.split_first() else {
                return Vec::new();
            };
            tagged_elem(p1, head, env)
                .iter()
                .flat_map(|e| tagged_list(p2, tail, e))
                .collect()
        }
        OPat::Join(p1, p2) => {
            let mut out = Vec::new();
            for k in 0..=target.len() {
                for e in tagged_list(p1, &target[..k], env) {
                    out.extend(tagged_list(p2, &target[k..], &e));
                }
            }
            out
        }
    }
}

fn tagged_elem(
    pat: &OPat,
    x: (usize, i64),
    env: &Vec<(&'static str, TaggedVal)>,
) -> Vec<Vec<(&'static str, TaggedVal)>> {
    match pat {
        OPat::Wild => vec![env.clone()],
        OPat::Var(n) => {
            let mut e = env.clone();
            e.push((n, TaggedVal::Int(x.0, x.1)));
            vec![e]
        }
        other => panic!("pattern {other:?} at element position after rewrite"),
    }
}

fn strip_tags_except(binds: &[(&'static str, TaggedVal)], fresh: &[&'static str]) -> OBinds {
    binds
        .iter()
        .filter(|(n, _)| !fresh.contains(n))
        .map(|(n, v)| {
            let val = match v {
                TaggedVal::Int(_, i) => OVal::Int(*i),
                TaggedVal::Coll(xs) => OVal::Coll(xs.iter().map(|&(_, i)| OVal::Int(i)).collect()),
            };
            (*n, val)
        })
        .collect()
}

fn permutations<T: Clone>(xs: &[T]) -> Vec<Vec<T>> {
    if xs.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..xs.len() {
        let mut rest = xs.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x.clone());
            out.push(p);
        }
    }
    out
}

/// Converts a forced interpreter value to the oracle's concrete form;
/// used to compare engine bindings with oracle bindings.
pub fn oval_of_value(v: &Value) -> EvalResult<OVal> {
    match v {
        Value::Int(n) => Ok(OVal::Int(
            n.to_i64().expect("oracle comparisons stay within i64"),
        )),
        Value::Stream(s) => {
            let mut items = Vec::new();
            for t in StreamIter::new(s.clone()) {
                items.push(oval_of_value(&t?.force()?)?);
            }
            Ok(OVal::Coll(items))
        }
        other => panic!("oracle comparison over {}", other.type_name()),
    }
}

/// Order-insensitive canonical form for cross-checking against the
/// permutation oracle: sorts every collection recursively.
pub fn canon_unordered(v: &OVal) -> OVal {
    match v {
        OVal::Int(i) => OVal::Int(*i),
        OVal::Coll(xs) => {
            let mut ys: Vec<OVal> = xs.iter().map(canon_unordered).collect();
            ys.sort();
            OVal::Coll(ys)
        }
    }
}
