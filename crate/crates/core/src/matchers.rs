//! Matcher semantics: how each matcher decomposes a pattern constructor
//! into alternative sub-match obligations, and how it decides equality for
//! value patterns.
//!
//! Decomposition returns a lazy iterator of alternatives so infinite
//! targets work: alternatives force target cells only as they are pulled.
//! Alternative order is part of the language's observable result order:
//!   list: `cons` head/tail, `join` split points by growing prefix;
//!   multiset: `cons` one alternative per position, complement keeps the
//!     remaining order; `join` selects index subsets in binary-counting
//!     order (so by increasing greatest index on infinite targets);
//!   set: like multiset except the remainder is the whole target, so
//!     elements may be picked again.

use crate::error::EvalError;
use crate::syntax::Pattern;
use crate::value::{
    AdtMatcher, EvalResult, Lazy, MatcherVal, Stream, StreamIter, StreamThunk, Thunk, Value,
};
use std::rc::Rc;

/// Collection size beyond which value-pattern equality refuses to search.
pub const EQUALITY_CAP: usize = 64;

/// One alternative: sub-obligations in left-to-right pattern order.
pub type Alternative = Vec<(Rc<Pattern>, Thunk, MatcherVal)>;
pub type AltIter = Box<dyn Iterator<Item = EvalResult<Alternative>>>;

fn empty_alts() -> AltIter {
    Box::new(std::iter::empty())
}

fn one_alt(alt: Alternative) -> AltIter {
    Box::new(std::iter::once(Ok(alt)))
}

fn mismatch(matcher: &MatcherVal, ctor: &str) -> EvalError {
    EvalError::MatcherMismatch(format!(
        "{} cannot match <{ctor} ...>",
        matcher.describe()
    ))
}

/// Splits `target` according to `ctor` under `matcher`, yielding the
/// alternatives in the committed order.
pub fn decompose(
    matcher: &MatcherVal,
    ctor: &str,
    args: &[Rc<Pattern>],
    target: &Thunk,
) -> EvalResult<AltIter> {
    match matcher {
        MatcherVal::List(m) | MatcherVal::Multiset(m) | MatcherVal::Set(m) => {
            let expected_arity = match ctor {
                "nil" => 0,
                "cons" | "join" => 2,
                _ => return Err(mismatch(matcher, ctor)),
            };
            if args.len() != expected_arity {
                return Err(EvalError::MatcherMismatch(format!(
                    "<{ctor} ...> takes {expected_arity} argument(s), got {}",
                    args.len()
                )));
            }
            let stream = target.force()?.as_stream()?;
            let m = m.as_ref().clone();
            Ok(match (matcher, ctor) {
                (_, "nil") => Box::new(NilAlt {
                    target: Some(stream),
                }),
                (MatcherVal::List(_), "cons") => Box::new(ListCons {
                    p: [args[0].clone(), args[1].clone()],
                    elem: m,
                    target: Some(stream),
                }),
                (MatcherVal::List(_), "join") => Box::new(ListJoin {
                    p: [args[0].clone(), args[1].clone()],
                    elem: m,
                    prefix: Vec::new(),
                    rest: Some(stream),
                    started: false,
                }),
                (MatcherVal::Multiset(_), "cons") => Box::new(BagCons {
                    p: [args[0].clone(), args[1].clone()],
                    elem: m,
                    seen: Vec::new(),
                    rest: Some(stream),
                    whole: None,
                }),
                (MatcherVal::Set(_), "cons") => Box::new(BagCons {
                    p: [args[0].clone(), args[1].clone()],
                    elem: m,
                    seen: Vec::new(),
                    rest: Some(stream.clone()),
                    whole: Some(stream),
                }),
                (MatcherVal::Multiset(_), "join") => Box::new(SubsetJoin {
                    p: [args[0].clone(), args[1].clone()],
                    elem: m,
                    cells: Vec::new(),
                    rest: Some(stream),
                    count: 0,
                    exhausted: false,
                    whole: None,
                }),
                (MatcherVal::Set(_), "join") => Box::new(SubsetJoin {
                    p: [args[0].clone(), args[1].clone()],
                    elem: m,
                    cells: Vec::new(),
                    rest: Some(stream.clone()),
                    count: 0,
                    exhausted: false,
                    whole: Some(stream),
                }),
                _ => unreachable!("ctor checked above"),
            })
        }
        MatcherVal::Adt(adt) => decompose_adt(adt, ctor, args, target),
        other => Err(mismatch(other, ctor)),
    }
}

struct NilAlt {
    target: Option<StreamThunk>,
}

impl Iterator for NilAlt {
    type Item = EvalResult<Alternative>;

    fn next(&mut self) -> Option<Self::Item> {
        let t = self.target.take()?;
        match t.force() {
            Err(e) => Some(Err(e)),
            Ok(Stream::Nil) => Some(Ok(Vec::new())),
            Ok(Stream::Cons(_, _)) => None,
        }
    }
}

struct ListCons {
    p: [Rc<Pattern>; 2],
    elem: MatcherVal,
    target: Option<StreamThunk>,
}

impl Iterator for ListCons {
    type Item = EvalResult<Alternative>;

    fn next(&mut self) -> Option<Self::Item> {
        let t = self.target.take()?;
        match t.force() {
            Err(e) => Some(Err(e)),
            Ok(Stream::Nil) => None,
            Ok(Stream::Cons(h, rest)) => Some(Ok(vec![
                (self.p[0].clone(), h, self.elem.clone()),
                (
                    self.p[1].clone(),
                    Lazy::ready(Value::Stream(rest)),
                    MatcherVal::List(Rc::new(self.elem.clone())),
                ),
            ])),
        }
    }
}

struct ListJoin {
    p: [Rc<Pattern>; 2],
    elem: MatcherVal,
    prefix: Vec<Thunk>,
    rest: Option<StreamThunk>,
    started: bool,
}

impl Iterator for ListJoin {
    type Item = EvalResult<Alternative>;

    fn next(&mut self) -> Option<Self::Item> {
        let rest = self.rest.clone()?;
        if self.started {
            match rest.force() {
                Err(e) => {
                    self.rest = None;
                    return Some(Err(e));
                }
                Ok(Stream::Nil) => {
                    self.rest = None;
                    return None;
                }
                Ok(Stream::Cons(h, t)) => {
                    self.prefix.push(h);
                    self.rest = Some(t);
                }
            }
        } else {
            self.started = true;
        }
        let lm = MatcherVal::List(Rc::new(self.elem.clone()));
        Some(Ok(vec![
            (
                self.p[0].clone(),
                Lazy::ready(Value::Stream(Stream::from_thunks(self.prefix.clone()))),
                lm.clone(),
            ),
            (
                self.p[1].clone(),
                Lazy::ready(Value::Stream(self.rest.clone().unwrap())),
                lm,
            ),
        ]))
    }
}

/// `cons` over a multiset picks each position in turn; over a set the same,
/// but the remainder stays the whole target (`whole` present).
struct BagCons {
    p: [Rc<Pattern>; 2],
    elem: MatcherVal,
    seen: Vec<Thunk>,
    rest: Option<StreamThunk>,
    whole: Option<StreamThunk>,
}

impl Iterator for BagCons {
    type Item = EvalResult<Alternative>;

    fn next(&mut self) -> Option<Self::Item> {
        let rest = self.rest.take()?;
        match rest.force() {
            Err(e) => Some(Err(e)),
            Ok(Stream::Nil) => None,
            Ok(Stream::Cons(h, t)) => {
                let (remainder, rm) = match &self.whole {
                    Some(w) => (w.clone(), MatcherVal::Set(Rc::new(self.elem.clone()))),
                    None => (
                        Stream::from_thunks_with_tail(self.seen.clone(), t.clone()),
                        MatcherVal::Multiset(Rc::new(self.elem.clone())),
                    ),
                };
                self.seen.push(h.clone());
                self.rest = Some(t);
                Some(Ok(vec![
                    (self.p[0].clone(), h, self.elem.clone()),
                    (self.p[1].clone(), Lazy::ready(Value::Stream(remainder)), rm),
                ]))
            }
        }
    }
}

/// `join` over a multiset or set: index subsets in binary-counting order.
/// Bit `i` of `count` selects position `i`. Forces one new cell at a time,
/// so infinite targets enumerate by increasing greatest index.
struct SubsetJoin {
    p: [Rc<Pattern>; 2],
    elem: MatcherVal,
    cells: Vec<Thunk>,
    rest: Option<StreamThunk>,
    count: u128,
    exhausted: bool,
    whole: Option<StreamThunk>,
}

impl Iterator for SubsetJoin {
    type Item = EvalResult<Alternative>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.exhausted {
            return None;
        }
        let bits = 128 - self.count.leading_zeros() as usize;
        while self.cells.len() < bits {
            let Some(rest) = self.rest.take() else {
                return None; // exhausted all subsets of a finite target
            };
            match rest.force() {
                Err(e) => return Some(Err(e)),
                Ok(Stream::Nil) => return None,
                Ok(Stream::Cons(h, t)) => {
                    self.cells.push(h);
                    self.rest = Some(t);
                }
            }
        }
        let mut selected = Vec::new();
        let mut unselected = Vec::new();
        for (i, c) in self.cells.iter().enumerate() {
            if i < 128 && self.count >> i & 1 == 1 {
                selected.push(c.clone());
            } else {
                unselected.push(c.clone());
            }
        }
        match self.count.checked_add(1) {
            Some(n) => self.count = n,
            None => self.exhausted = true,
        }
        let (remainder, om) = match &self.whole {
            Some(w) => (w.clone(), MatcherVal::Set(Rc::new(self.elem.clone()))),
            None => {
                let tail = self.rest.clone().unwrap_or_else(Stream::empty);
                (
                    Stream::from_thunks_with_tail(unselected, tail),
                    MatcherVal::Multiset(Rc::new(self.elem.clone())),
                )
            }
        };
        Some(Ok(vec![
            (
                self.p[0].clone(),
                Lazy::ready(Value::Stream(Stream::from_thunks(selected))),
                om.clone(),
            ),
            (self.p[1].clone(), Lazy::ready(Value::Stream(remainder)), om),
        ]))
    }
}

fn decompose_adt(
    adt: &Rc<AdtMatcher>,
    ctor: &str,
    args: &[Rc<Pattern>],
    target: &Thunk,
) -> EvalResult<AltIter> {
    let Some(decl) = adt.ctors.iter().find(|c| c.pattern_name == ctor) else {
        return Err(EvalError::MatcherMismatch(format!(
            "{} has no pattern constructor <{ctor} ...>",
            adt.name
        )));
    };
    if args.len() != decl.fields.len() {
        return Err(EvalError::MatcherMismatch(format!(
            "<{ctor} ...> takes {} argument(s), got {}",
            decl.fields.len(),
            args.len()
        )));
    }
    let forced = target.force()?;
    let Value::Data(name, fields) = &forced else {
        return Err(EvalError::TypeMismatch {
            expected: "a constructor term",
            got: forced.type_name().into(),
        });
    };
    if **name != decl.data_name {
        return Ok(empty_alts());
    }
    if fields.len() != decl.fields.len() {
        return Err(EvalError::MatcherMismatch(format!(
            "<{name} ...> carries {} field(s), {} declares {}",
            fields.len(),
            adt.name,
            decl.fields.len()
        )));
    }
    let alt = args
        .iter()
        .zip(fields)
        .zip(&decl.fields)
        .map(|((p, t), m)| (p.clone(), t.clone(), m.clone()))
        .collect();
    Ok(one_alt(alt))
}

/// Equality as the matcher defines it. `Eq` and `Integer` are syntactic;
/// multisets ignore order; sets ignore order and multiplicity; tuples and
/// declared constructors compare componentwise under their field matchers.
pub fn value_equal(m: &MatcherVal, a: &Value, b: &Value) -> EvalResult<bool> {
    match m {
        MatcherVal::Something => Err(EvalError::ValuePatternUnderSomething),
        MatcherVal::Integer => Ok(a.as_int()? == b.as_int()?),
        MatcherVal::Eq => structural_eq(a, b),
        MatcherVal::List(em) => {
            let mut xs = StreamIter::new(a.as_stream()?);
            let mut ys = StreamIter::new(b.as_stream()?);
            loop {
                match (xs.next().transpose()?, ys.next().transpose()?) {
                    (None, None) => return Ok(true),
                    (Some(x), Some(y)) => {
                        if !value_equal(em, &x.force()?, &y.force()?)? {
                            return Ok(false);
                        }
                    }
                    _ => return Ok(false),
                }
            }
        }
        MatcherVal::Multiset(em) => {
            let xs = force_capped(a.as_stream()?)?;
            let ys = force_capped(b.as_stream()?)?;
            if xs.len() != ys.len() {
                return Ok(false);
            }
            let mut used = vec![false; ys.len()];
            pair_off(em, &xs, &ys, &mut used, 0)
        }
        MatcherVal::Set(em) => {
            let xs = force_capped(a.as_stream()?)?;
            let ys = force_capped(b.as_stream()?)?;
            for x in &xs {
                if !any_equal(em, x, &ys)? {
                    return Ok(false);
                }
            }
            for y in &ys {
                if !any_equal(em, y, &xs)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        MatcherVal::TupleOf(ms) => {
            let (Value::Tuple(xs), Value::Tuple(ys)) = (a, b) else {
                return Err(EvalError::TypeMismatch {
                    expected: "a tuple",
                    got: if matches!(a, Value::Tuple(_)) { b } else { a }
                        .type_name()
                        .into(),
                });
            };
            if xs.len() != ms.len() || ys.len() != ms.len() {
                return Ok(false);
            }
            for ((x, y), em) in xs.iter().zip(ys).zip(ms.iter()) {
                if !value_equal(em, &x.force()?, &y.force()?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        MatcherVal::Adt(adt) => {
            let (Value::Data(n1, f1), Value::Data(n2, f2)) = (a, b) else {
                return Err(EvalError::TypeMismatch {
                    expected: "a constructor term",
                    got: if matches!(a, Value::Data(_, _)) { b } else { a }
                        .type_name()
                        .into(),
                });
            };
            if n1 != n2 {
                return Ok(false);
            }
            let Some(decl) = adt.ctors.iter().find(|c| c.data_name == **n1) else {
                return Err(EvalError::MatcherMismatch(format!(
                    "{} has no constructor <{n1} ...>",
                    adt.name
                )));
            };
            if f1.len() != decl.fields.len() || f2.len() != decl.fields.len() {
                return Err(EvalError::MatcherMismatch(format!(
                    "<{n1} ...> carries the wrong number of fields for {}",
                    adt.name
                )));
            }
            for ((x, y), em) in f1.iter().zip(f2).zip(&decl.fields) {
                if !value_equal(em, &x.force()?, &y.force()?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

fn any_equal(em: &MatcherVal, x: &Value, ys: &[Value]) -> EvalResult<bool> {
    for y in ys {
        if value_equal(em, x, y)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Backtracking search for a bijection between equal-length slices.
fn pair_off(
    em: &MatcherVal,
    xs: &[Value],
    ys: &[Value],
    used: &mut [bool],
    i: usize,
) -> EvalResult<bool> {
    if i == xs.len() {
        return Ok(true);
    }
    for j in 0..ys.len() {
        if !used[j] && value_equal(em, &xs[i], &ys[j])? {
            used[j] = true;
            if pair_off(em, xs, ys, used, i + 1)? {
                return Ok(true);
            }
            used[j] = false;
        }
    }
    Ok(false)
}

fn force_capped(s: StreamThunk) -> EvalResult<Vec<Value>> {
    let mut out = Vec::new();
    for t in StreamIter::new(s) {
        out.push(t?.force()?);
        if out.len() > EQUALITY_CAP {
            return Err(EvalError::EqualityTooLarge(EQUALITY_CAP));
        }
    }
    Ok(out)
}

/// Syntactic equality on fully forced values. Functions and matchers do not
/// compare; collections compare elementwise in order.
pub fn structural_eq(a: &Value, b: &Value) -> EvalResult<bool> {
    match (a, b) {
        (Value::Int(x), Value::Int(y)) => Ok(x == y),
        (Value::Data(n1, f1), Value::Data(n2, f2)) => {
            if n1 != n2 || f1.len() != f2.len() {
                return Ok(false);
            }
            thunks_eq(f1, f2)
        }
        (Value::Tuple(x), Value::Tuple(y)) => {
            if x.len() != y.len() {
                return Ok(false);
            }
            thunks_eq(x, y)
        }
        (Value::Stream(x), Value::Stream(y)) => {
            let mut xs = StreamIter::new(x.clone());
            let mut ys = StreamIter::new(y.clone());
            loop {
                match (xs.next().transpose()?, ys.next().transpose()?) {
                    (None, None) => return Ok(true),
                    (Some(p), Some(q)) => {
                        if !structural_eq(&p.force()?, &q.force()?)? {
                            return Ok(false);
                        }
                    }
                    _ => return Ok(false),
                }
            }
        }
        _ => {
            for v in [a, b] {
                if matches!(v, Value::Closure(_) | Value::Builtin(_) | Value::Matcher(_)) {
                    return Err(EvalError::TypeMismatch {
                        expected: "a comparable value",
                        got: v.type_name().into(),
                    });
                }
            }
            Ok(false)
        }
    }
}

fn thunks_eq(xs: &[Thunk], ys: &[Thunk]) -> EvalResult<bool> {
    for (x, y) in xs.iter().zip(ys) {
        if !structural_eq(&x.force()?, &y.force()?)? {
            return Ok(false);
        }
    }
    Ok(true)
}
