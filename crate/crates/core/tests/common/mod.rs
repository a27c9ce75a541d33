//! Helpers shared by the integration tests: build sessions, run the match
//! search directly, and convert engine bindings into the oracle's value
//! shape so the two sides compare as plain data.

#![allow(dead_code)]

use nfm_core::engine::Search;
use nfm_core::oracle::{OKind, OPat, OVal};
use nfm_core::syntax::{parse_pattern, read_forms};
use nfm_core::value::{EvalResult, Lazy, MatcherVal, Value};
use nfm_core::{RunConfig, Session};
use std::collections::BTreeMap;

pub type BindMap = BTreeMap<String, OVal>;

pub fn session() -> Session {
    Session::new(RunConfig::default())
}

/// Runs a source text in a fresh session and returns the rendered outputs.
pub fn eval_lines(src: &str) -> Vec<String> {
    session().run_source(src).unwrap_or_else(|e| panic!("{e}\nsource: {src}"))
}

/// Runs a source text and returns the single rendered output.
pub fn eval_one(src: &str) -> String {
    let lines = eval_lines(src);
    assert_eq!(lines.len(), 1, "expected one output from {src}");
    lines.into_iter().next().unwrap()
}

pub fn kind_name(kind: OKind) -> &'static str {
    match kind {
        OKind::List => "list",
        OKind::Multiset => "multiset",
        OKind::Set => "set",
    }
}

/// Surface syntax for an oracle pattern. `Val(n, 0)` prints as `,n` and
/// `Val(n, k)` as `,(+ n k)`.
pub fn opat_source(p: &OPat) -> String {
    match p {
        OPat::Wild => "_".into(),
        OPat::Var(n) => format!("${n}"),
        OPat::Val(n, 0) => format!(",{n}"),
        OPat::Val(n, k) => format!(",(+ {n} {k})"),
        OPat::Nil => "<nil>".into(),
        OPat::Cons(a, b) => format!("<cons {} {}>", opat_source(a), opat_source(b)),
        OPat::Join(a, b) => format!("<join {} {}>", opat_source(a), opat_source(b)),
    }
}

pub fn collection_source(target: &[i64]) -> String {
    let elems: Vec<String> = target.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", elems.join(" "))
}

/// Runs the match search for `pat_src` against a concrete integer collection
/// under `(kind integer)`, returning every binding set (engine order), with
/// each bound value forced into oracle shape. `limit` bounds the number of
/// results taken; pass `usize::MAX` for finite searches.
pub fn engine_binding_maps(
    ses: &Session,
    kind: OKind,
    pat_src: &str,
    target: &[i64],
    limit: usize,
) -> EvalResult<Vec<BindMap>> {
    let env = ses.env().clone();
    let pattern = pattern_of(pat_src);
    let matcher = matcher_of(ses, &format!("({} integer)", kind_name(kind)));
    let target_value = value_of(ses, &collection_source(target));
    let search = Search::new(env, pattern, Lazy::ready(target_value), matcher);
    let mut out = Vec::new();
    for res in search.take(limit) {
        let binds = res?;
        let mut map = BindMap::new();
        for (key, thunk) in binds.to_vec() {
            let v = thunk.force()?;
            map.insert(key.to_string(), nfm_core::oracle::oval_of_value(&v)?);
        }
        out.push(map);
    }
    Ok(out)
}

pub fn pattern_of(src: &str) -> std::rc::Rc<nfm_core::syntax::Pattern> {
    let forms = read_forms(src).expect("pattern reads");
    assert_eq!(forms.len(), 1);
    parse_pattern(&forms[0]).expect("pattern parses")
}

pub fn value_of(ses: &Session, src: &str) -> Value {
    let forms = read_forms(src).expect("expression reads");
    let expr = nfm_core::syntax::parse_expr(&forms[0]).expect("expression parses");
    nfm_core::eval::eval(&expr, ses.env()).expect("expression evaluates")
}

pub fn matcher_of(ses: &Session, src: &str) -> MatcherVal {
    value_of(ses, src).as_matcher().expect("a matcher expression")
}

pub fn oracle_to_bindmap(binds: &nfm_core::oracle::OBinds) -> BindMap {
    binds.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

/// Multiset compare: both sides sorted.
pub fn assert_same_binding_multiset(mut got: Vec<BindMap>, mut want: Vec<BindMap>, ctx: &str) {
    got.sort();
    want.sort();
    assert_eq!(got, want, "{ctx}");
}

/// Pattern battery for engine/oracle comparison: empty, element access,
/// two elements, splits, a split with both parts bound, non-linear
/// repeats, and exact shapes.
pub fn battery() -> Vec<OPat> {
    fn wild() -> Box<OPat> {
        Box::new(OPat::Wild)
    }
    fn var(n: &'static str) -> Box<OPat> {
        Box::new(OPat::Var(n))
    }
    fn val(n: &'static str, k: i64) -> Box<OPat> {
        Box::new(OPat::Val(n, k))
    }
    vec![
        OPat::Nil,
        OPat::Cons(var("x"), var("ts")),
        OPat::Cons(var("x"), Box::new(OPat::Cons(var("y"), wild()))),
        OPat::Join(var("xs"), var("ys")),
        OPat::Join(var("hs"), Box::new(OPat::Cons(var("x"), var("ts")))),
        OPat::Cons(var("x"), Box::new(OPat::Cons(val("x", 0), wild()))),
        OPat::Join(
            wild(),
            Box::new(OPat::Cons(
                var("x"),
                Box::new(OPat::Join(wild(), Box::new(OPat::Cons(val("x", 1), wild())))),
            )),
        ),
        OPat::Cons(wild(), Box::new(OPat::Nil)),
    ]
}

/// First `k` pairs of the two-element set enumeration over the naturals.
pub fn nat_pairs(k: usize) -> Vec<(i64, i64)> {
    use nfm_core::value::Key;
    let ses = session();
    let env = ses.env().clone();
    let pattern = pattern_of("<cons $m <cons $n _>>");
    let matcher = matcher_of(&ses, "(set integer)");
    let nats = env.lookup(&Key::plain("nats")).expect("nats is defined");
    let search = nfm_core::engine::Search::new(env, pattern, nats, matcher);
    search
        .take(k)
        .map(|res| {
            let binds = res.expect("no errors in the nat enumeration");
            let get = |n: &str| match binds.lookup(&Key::plain(n)) {
                Some(t) => match nfm_core::oracle::oval_of_value(&t.force().unwrap()).unwrap() {
                    OVal::Int(i) => i,
                    other => panic!("{other:?}"),
                },
                None => panic!("{n} unbound"),
            };
            (get("m"), get("n"))
        })
        .collect()
}

/// Shared bump counter for instrumented streams.
#[derive(Clone, Default)]
pub struct Counter(std::rc::Rc<std::cell::Cell<usize>>);

impl Counter {
    pub fn bump(&self) {
        self.0.set(self.0.get() + 1);
    }

    pub fn get(&self) -> usize {
        self.0.get()
    }
}

/// Infinite ascending integers; `cells` counts spine forces and `elems`
/// counts element forces.
pub fn counted_nats(
    from: i64,
    cells: Counter,
    elems: Counter,
) -> nfm_core::value::StreamThunk {
    use nfm_core::value::Stream;
    Lazy::new(move || {
        cells.bump();
        let e = elems.clone();
        let head = Lazy::new(move || {
            e.bump();
            Ok(Value::int(from))
        });
        Ok(Stream::Cons(head, counted_nats(from + 1, cells, elems)))
    })
}

pub fn counted_finite(
    values: Vec<i64>,
    cells: Counter,
    elems: Counter,
) -> nfm_core::value::StreamThunk {
    use nfm_core::value::Stream;
    let mut tail = {
        let cells = cells.clone();
        Lazy::new(move || {
            cells.bump();
            Ok(Stream::Nil)
        })
    };
    for v in values.into_iter().rev() {
        let e = elems.clone();
        let c = cells.clone();
        let prev = tail;
        tail = Lazy::new(move || {
            c.bump();
            let head = Lazy::new(move || {
                e.bump();
                Ok(Value::int(v))
            });
            Ok(Stream::Cons(head, prev))
        });
    }
    tail
}

/// Every length ≤ `max_len` vector over `alphabet`.
pub fn all_vectors(alphabet: &[i64], max_len: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for v in &frontier {
            for &a in alphabet {
                let mut w = v.clone();
                w.push(a);
                next.push(w);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
