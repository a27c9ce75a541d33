//! Runtime representation: thunks that force at most once, lazy streams,
//! values, matcher values, and environments.
//!
//! Collections are streams of unforced element thunks, so both the spine and
//! the elements stay lazy until demanded. Forcing a thunk that is already
//! being forced reports a self-dependency instead of looping.

use crate::error::EvalError;
use crate::syntax::{Expr, Lambda};
use num_bigint::BigInt;
use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

pub type EvalResult<T> = Result<T, EvalError>;

enum LazyState<T> {
    Pending(Box<dyn FnOnce() -> EvalResult<T>>),
    Busy,
    Done(T),
    Failed(EvalError),
}

/// Shared memoizing cell: the computation runs on first force, and every
/// clone sees the same outcome, including failures.
pub struct Lazy<T>(Rc<RefCell<LazyState<T>>>);

impl<T> Clone for Lazy<T> {
    fn clone(&self) -> Self {
        Lazy(Rc::clone(&self.0))
    }
}

impl<T: Clone> Lazy<T> {
    pub fn new(f: impl FnOnce() -> EvalResult<T> + 'static) -> Self {
        Lazy(Rc::new(RefCell::new(LazyState::Pending(Box::new(f)))))
    }

    pub fn ready(v: T) -> Self {
        Lazy(Rc::new(RefCell::new(LazyState::Done(v))))
    }

    pub fn force(&self) -> EvalResult<T> {
        {
            let state = self.0.borrow();
            match &*state {
                LazyState::Done(v) => return Ok(v.clone()),
                LazyState::Failed(e) => return Err(e.clone()),
                LazyState::Busy => return Err(EvalError::BlackHole),
                LazyState::Pending(_) => {}
            }
        }
        let f = match std::mem::replace(&mut *self.0.borrow_mut(), LazyState::Busy) {
            LazyState::Pending(f) => f,
            _ => unreachable!("state checked above"),
        };
        let result = f();
        let mut state = self.0.borrow_mut();
        match result {
            Ok(v) => {
                *state = LazyState::Done(v.clone());
                Ok(v)
            }
            Err(e) => {
                *state = LazyState::Failed(e.clone());
                Err(e)
            }
        }
    }
}

pub type Thunk = Lazy<Value>;

impl Thunk {
    /// Delays evaluation of `expr` in `env`.
    pub fn suspend(expr: Rc<Expr>, env: Env) -> Thunk {
        Lazy::new(move || crate::eval::eval(&expr, &env))
    }
}

pub type StreamThunk = Lazy<Stream>;

#[derive(Clone)]
pub enum Stream {
    Nil,
    Cons(Thunk, StreamThunk),
}

impl Stream {
    pub fn empty() -> StreamThunk {
        Lazy::ready(Stream::Nil)
    }

    /// Finite stream with a strict spine over already-made element thunks.
    pub fn from_thunks(elems: Vec<Thunk>) -> StreamThunk {
        Stream::from_thunks_with_tail(elems, Stream::empty())
    }

    pub fn from_thunks_with_tail(elems: Vec<Thunk>, tail: StreamThunk) -> StreamThunk {
        let mut cur = tail;
        for t in elems.into_iter().rev() {
            cur = Lazy::ready(Stream::Cons(t, cur));
        }
        cur
    }
}

/// Walks a stream's spine, yielding element thunks. An error while forcing
/// a cell ends the iteration after yielding that error.
pub struct StreamIter {
    cur: Option<StreamThunk>,
}

impl StreamIter {
    pub fn new(s: StreamThunk) -> Self {
        StreamIter { cur: Some(s) }
    }
}

impl Iterator for StreamIter {
    type Item = EvalResult<Thunk>;

    fn next(&mut self) -> Option<Self::Item> {
        let s = self.cur.take()?;
        match s.force() {
            Err(e) => Some(Err(e)),
            Ok(Stream::Nil) => None,
            Ok(Stream::Cons(h, t)) => {
                self.cur = Some(t);
                Some(Ok(h))
            }
        }
    }
}

#[derive(Clone)]
pub struct ClosureVal {
    pub lambda: Rc<Lambda>,
    pub env: Env,
}

pub struct BuiltinDef {
    pub name: &'static str,
    /// Minimum and optional maximum argument count.
    pub arity: (usize, Option<usize>),
    pub run: fn(&[Thunk]) -> EvalResult<Value>,
}

#[derive(Clone)]
pub enum Value {
    Int(BigInt),
    Data(Rc<str>, Vec<Thunk>),
    Tuple(Vec<Thunk>),
    Stream(StreamThunk),
    Closure(Rc<ClosureVal>),
    Builtin(&'static BuiltinDef),
    Matcher(MatcherVal),
}

impl Value {
    pub fn int(n: impl Into<BigInt>) -> Value {
        Value::Int(n.into())
    }

    pub fn data(name: &str, args: Vec<Thunk>) -> Value {
        Value::Data(Rc::from(name), args)
    }

    pub fn boolean(b: bool) -> Value {
        Value::data(if b { "True" } else { "False" }, Vec::new())
    }

    pub fn type_name(&self) -> &'static str {
        match self {
            Value::Int(_) => "an integer",
            Value::Data(_, _) => "a constructor term",
            Value::Tuple(_) => "a tuple",
            Value::Stream(_) => "a collection",
            Value::Closure(_) => "a function",
            Value::Builtin(_) => "a function",
            Value::Matcher(_) => "a matcher",
        }
    }

    pub fn as_int(&self) -> EvalResult<&BigInt> {
        match self {
            Value::Int(n) => Ok(n),
            other => Err(EvalError::TypeMismatch {
                expected: "an integer",
                got: other.type_name().into(),
            }),
        }
    }

    pub fn as_stream(&self) -> EvalResult<StreamThunk> {
        match self {
            Value::Stream(s) => Ok(s.clone()),
            other => Err(EvalError::TypeMismatch {
                expected: "a collection",
                got: other.type_name().into(),
            }),
        }
    }

    pub fn as_matcher(&self) -> EvalResult<MatcherVal> {
        match self {
            Value::Matcher(m) => Ok(m.clone()),
            // A tuple of matchers is itself a matcher, componentwise.
            Value::Tuple(parts) => {
                let ms = parts
                    .iter()
                    .map(|t| t.force()?.as_matcher())
                    .collect::<EvalResult<Vec<_>>>()?;
                Ok(MatcherVal::TupleOf(Rc::new(ms)))
            }
            other => Err(EvalError::TypeMismatch {
                expected: "a matcher",
                got: other.type_name().into(),
            }),
        }
    }
}

#[derive(Clone)]
pub enum MatcherVal {
    Something,
    Integer,
    Eq,
    List(Rc<MatcherVal>),
    Multiset(Rc<MatcherVal>),
    Set(Rc<MatcherVal>),
    TupleOf(Rc<Vec<MatcherVal>>),
    Adt(Rc<AdtMatcher>),
}

impl MatcherVal {
    pub fn describe(&self) -> String {
        match self {
            MatcherVal::Something => "something".into(),
            MatcherVal::Integer => "integer".into(),
            MatcherVal::Eq => "eq".into(),
            MatcherVal::List(m) => format!("(list {})", m.describe()),
            MatcherVal::Multiset(m) => format!("(multiset {})", m.describe()),
            MatcherVal::Set(m) => format!("(set {})", m.describe()),
            MatcherVal::TupleOf(ms) => {
                let parts: Vec<String> = ms.iter().map(|m| m.describe()).collect();
                format!("[{}]", parts.join(" "))
            }
            MatcherVal::Adt(a) => a.name.clone(),
        }
    }
}

pub struct AdtMatcher {
    pub name: String,
    /// Pattern-constructor name (lowercase), its data constructor
    /// (capitalized), and the field matchers.
    pub ctors: Vec<AdtCtor>,
}

pub struct AdtCtor {
    pub pattern_name: String,
    pub data_name: String,
    pub fields: Vec<MatcherVal>,
}

/// Capitalizes a pattern-constructor name into its data constructor.
pub fn data_ctor_name(pattern_name: &str) -> String {
    let mut cs = pattern_name.chars();
    match cs.next() {
        Some(c) => c.to_uppercase().chain(cs).collect(),
        None => String::new(),
    }
}

/// Variable key: a plain name, or a name with evaluated integer indexes.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Key {
    pub name: String,
    pub indices: Vec<BigInt>,
}

impl Key {
    pub fn plain(name: impl Into<String>) -> Key {
        Key {
            name: name.into(),
            indices: Vec::new(),
        }
    }

    pub fn indexed(name: impl Into<String>, indices: Vec<BigInt>) -> Key {
        Key {
            name: name.into(),
            indices,
        }
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for i in &self.indices {
            write!(f, "_{i}")?;
        }
        Ok(())
    }
}

#[derive(Clone)]
struct BindNode {
    key: Key,
    thunk: Thunk,
    next: Bindings,
}

/// Persistent association list of pattern-variable bindings. Cheap to extend
/// and to snapshot, which the match search relies on.
#[derive(Clone)]
pub struct Bindings(Option<Rc<BindNode>>);

impl Bindings {
    pub fn empty() -> Bindings {
        Bindings(None)
    }

    pub fn bind(&self, key: Key, thunk: Thunk) -> Bindings {
        Bindings(Some(Rc::new(BindNode {
            key,
            thunk,
            next: self.clone(),
        })))
    }

    pub fn lookup(&self, key: &Key) -> Option<Thunk> {
        let mut cur = &self.0;
        while let Some(node) = cur {
            if node.key == *key {
                return Some(node.thunk.clone());
            }
            cur = &node.next.0;
        }
        None
    }

    pub fn contains(&self, key: &Key) -> bool {
        self.lookup(key).is_some()
    }

    /// Pairs in binding order (earliest first).
    pub fn to_vec(&self) -> Vec<(Key, Thunk)> {
        let mut out = Vec::new();
        let mut cur = &self.0;
        while let Some(node) = cur {
            out.push((node.key.clone(), node.thunk.clone()));
            cur = &node.next.0;
        }
        out.reverse();
        out
    }
}

enum EnvNode {
    Root(RefCell<HashMap<String, Thunk>>),
    Params(Vec<(String, Thunk)>, Env),
    Binds(Bindings, Env),
}

/// Lexical environment: a chain of frames over one mutable global table.
/// Pattern bindings enter as their own frame so indexed keys resolve.
#[derive(Clone)]
pub struct Env(Rc<EnvNode>);

impl Env {
    pub fn new_global() -> Env {
        Env(Rc::new(EnvNode::Root(RefCell::new(HashMap::new()))))
    }

    pub fn extend_params(&self, params: Vec<(String, Thunk)>) -> Env {
        Env(Rc::new(EnvNode::Params(params, self.clone())))
    }

    pub fn extend_binds(&self, binds: Bindings) -> Env {
        Env(Rc::new(EnvNode::Binds(binds, self.clone())))
    }

    /// Installs or replaces a global definition.
    pub fn define(&self, name: &str, thunk: Thunk) {
        let mut cur = self;
        loop {
            match &*cur.0 {
                EnvNode::Root(map) => {
                    map.borrow_mut().insert(name.to_string(), thunk);
                    return;
                }
                EnvNode::Params(_, parent) => cur = parent,
                EnvNode::Binds(_, parent) => cur = parent,
            }
        }
    }

    pub fn lookup(&self, key: &Key) -> Option<Thunk> {
        let mut cur = self;
        loop {
            match &*cur.0 {
                EnvNode::Root(map) => {
                    if key.indices.is_empty() {
                        return map.borrow().get(&key.name).cloned();
                    }
                    return None;
                }
                EnvNode::Params(params, parent) => {
                    if key.indices.is_empty() {
                        if let Some((_, t)) = params.iter().find(|(n, _)| *n == key.name) {
                            return Some(t.clone());
                        }
                    }
                    cur = parent;
                }
                EnvNode::Binds(binds, parent) => {
                    if let Some(t) = binds.lookup(key) {
                        return Some(t);
                    }
                    cur = parent;
                }
            }
        }
    }
}
