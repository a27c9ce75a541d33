//! The pattern-match search engine.
//!
//! A match state is a stack of atoms (pattern, target, matcher) plus the
//! bindings accumulated so far. Stepping a state consumes the top atom and
//! yields a lazy stream of successor nodes; a state with no atoms left is a
//! leaf carrying a complete set of bindings.
//!
//! Results are enumerated by a fair sweep over a working list of node
//! streams. Each sweep visits the entries present when the sweep began and
//! takes at most one node from each: a leaf yields its bindings, an inner
//! node is stepped once and its successor stream is appended behind the
//! survivors for the next sweep, and an exhausted stream is dropped. This
//! interleaving is what makes infinite alternatives (splits of an infinite
//! collection, unbounded loop iterations) all reachable, and its order is
//! part of the language: every result order in the tests depends on it.

use crate::error::EvalError;
use crate::eval::eval;
use crate::matchers::{decompose, value_equal};
use crate::syntax::{Clause, Expr, LoopPat, MatchExpr, Pattern};
use crate::value::{
    Bindings, Env, EvalResult, Key, Lazy, MatcherVal, Stream, StreamThunk, Thunk, Value,
};
use std::cell::RefCell;
use std::collections::VecDeque;
use std::rc::Rc;

#[derive(Clone)]
pub struct MatchAtom {
    pub pattern: Rc<Pattern>,
    pub target: Thunk,
    pub matcher: MatcherVal,
}

/// Persistent stack so successor states share their unconsumed suffix.
#[derive(Clone)]
enum AtomStack {
    Nil,
    Cons(Rc<(MatchAtom, AtomStack)>),
}

impl AtomStack {
    fn push(&self, atom: MatchAtom) -> AtomStack {
        AtomStack::Cons(Rc::new((atom, self.clone())))
    }

    fn pop(&self) -> Option<(MatchAtom, AtomStack)> {
        match self {
            AtomStack::Nil => None,
            AtomStack::Cons(cell) => Some((cell.0.clone(), cell.1.clone())),
        }
    }
}

#[derive(Clone)]
struct MatchState {
    atoms: AtomStack,
    binds: Bindings,
}

enum SearchNode {
    Leaf(Bindings),
    Inner(MatchState),
}

type NodeStream = Box<dyn Iterator<Item = EvalResult<SearchNode>>>;

fn make_node(state: MatchState) -> SearchNode {
    match state.atoms.pop() {
        None => SearchNode::Leaf(state.binds),
        Some(_) => SearchNode::Inner(state),
    }
}

fn singleton(state: MatchState) -> NodeStream {
    Box::new(std::iter::once(Ok(make_node(state))))
}

/// Consumes the top atom of `state`, yielding its successor nodes.
fn step(state: MatchState, env: &Env) -> EvalResult<NodeStream> {
    let (atom, rest) = state
        .atoms
        .pop()
        .expect("stepped state always has an atom");
    let binds = state.binds;
    match atom.pattern.as_ref() {
        Pattern::Wildcard => Ok(singleton(MatchState { atoms: rest, binds })),
        Pattern::Var(name) => bind(Key::plain(name), atom.target, rest, binds),
        Pattern::IndexedVar(name, indices) => {
            let scope = env.extend_binds(binds.clone());
            let mut idxs = Vec::with_capacity(indices.len());
            for ix in indices {
                idxs.push(eval(ix, &scope)?.as_int()?.clone());
            }
            bind(Key::indexed(name, idxs), atom.target, rest, binds)
        }
        Pattern::Value(expr) => {
            if matches!(atom.matcher, MatcherVal::Something) {
                return Err(EvalError::ValuePatternUnderSomething);
            }
            let scope = env.extend_binds(binds.clone());
            let wanted = eval(expr, &scope)?;
            let got = atom.target.force()?;
            if value_equal(&atom.matcher, &wanted, &got)? {
                Ok(singleton(MatchState { atoms: rest, binds }))
            } else {
                Ok(Box::new(std::iter::empty()))
            }
        }
        Pattern::Inductive(ctor, args) => {
            let alts = decompose(&atom.matcher, ctor, args, &atom.target)?;
            Ok(Box::new(alts.map(move |alt| {
                alt.map(|obligations| {
                    let mut atoms = rest.clone();
                    for (pattern, target, matcher) in obligations.into_iter().rev() {
                        atoms = atoms.push(MatchAtom {
                            pattern,
                            target,
                            matcher,
                        });
                    }
                    make_node(MatchState {
                        atoms,
                        binds: binds.clone(),
                    })
                })
            })))
        }
        Pattern::Loop(lp) => {
            let expanded = expand_loop(lp, env, &binds)?;
            let atoms = rest.push(MatchAtom {
                pattern: expanded,
                target: atom.target,
                matcher: atom.matcher,
            });
            Ok(singleton(MatchState { atoms, binds }))
        }
        Pattern::Placeholder => Err(EvalError::Internal(
            "ellipsis survived outside a loop body".into(),
        )),
    }
}

fn bind(key: Key, target: Thunk, rest: AtomStack, binds: Bindings) -> EvalResult<NodeStream> {
    if binds.contains(&key) {
        return Err(EvalError::DuplicateBinding(key.to_string()));
    }
    Ok(singleton(MatchState {
        atoms: rest,
        binds: binds.bind(key, target),
    }))
}

/// One unrolling of a loop pattern. With the counter at `s` and bound `e`:
/// while `s <= e` the body is instantiated with the counter substituted and
/// its ellipsis replaced by the same loop restarted at `s + 1`; past the
/// bound the loop gives way to its tail, where the counter is not visible.
fn expand_loop(lp: &LoopPat, env: &Env, binds: &Bindings) -> EvalResult<Rc<Pattern>> {
    let scope = env.extend_binds(binds.clone());
    let start = loop_bound(&lp.start, &scope)?;
    let end = loop_bound(&lp.end, &scope)?;
    if start > end {
        return Ok(lp.tail.clone());
    }
    let next = Pattern::Loop(Rc::new(LoopPat {
        var: lp.var.clone(),
        start: Rc::new(Expr::Int(start.clone() + 1)),
        end: lp.end.clone(),
        rep: lp.rep.clone(),
        tail: lp.tail.clone(),
    }));
    let unrolled = replace_placeholder(&lp.rep, &next);
    let counter = Rc::new(Expr::Int(start));
    Ok(subst_pattern(&unrolled, &lp.var, &counter))
}

fn loop_bound(expr: &Rc<Expr>, scope: &Env) -> EvalResult<num_bigint::BigInt> {
    let v = eval(expr, scope)?;
    match v {
        Value::Int(n) => Ok(n),
        other => Err(EvalError::NonIntegerLoopBound(other.type_name().into())),
    }
}

/// Swaps the unique ellipsis of a loop body for `next`. Nested loops keep
/// their own ellipses.
fn replace_placeholder(p: &Rc<Pattern>, next: &Pattern) -> Rc<Pattern> {
    match p.as_ref() {
        Pattern::Placeholder => Rc::new(next.clone()),
        Pattern::Inductive(ctor, args) => Rc::new(Pattern::Inductive(
            ctor.clone(),
            args.iter().map(|a| replace_placeholder(a, next)).collect(),
        )),
        // A nested loop's tail may hold this loop's placeholder; its repeat
        // part keeps its own and is left alone.
        Pattern::Loop(lp) => Rc::new(Pattern::Loop(Rc::new(LoopPat {
            var: lp.var.clone(),
            start: lp.start.clone(),
            end: lp.end.clone(),
            rep: lp.rep.clone(),
            tail: replace_placeholder(&lp.tail, next),
        }))),
        _ => p.clone(),
    }
}

fn subst_pattern(p: &Rc<Pattern>, var: &str, val: &Rc<Expr>) -> Rc<Pattern> {
    match p.as_ref() {
        Pattern::Wildcard | Pattern::Var(_) | Pattern::Placeholder => p.clone(),
        Pattern::IndexedVar(name, indices) => Rc::new(Pattern::IndexedVar(
            name.clone(),
            indices.iter().map(|ix| subst_expr(ix, var, val)).collect(),
        )),
        Pattern::Value(e) => Rc::new(Pattern::Value(subst_expr(e, var, val))),
        Pattern::Inductive(ctor, args) => Rc::new(Pattern::Inductive(
            ctor.clone(),
            args.iter().map(|a| subst_pattern(a, var, val)).collect(),
        )),
        Pattern::Loop(lp) => {
            // An inner loop over the same counter shadows it in its own
            // body and tail; its bounds are evaluated outside and still see
            // the outer counter.
            let shadowed = lp.var == var;
            let sub = |q: &Rc<Pattern>| {
                if shadowed {
                    q.clone()
                } else {
                    subst_pattern(q, var, val)
                }
            };
            Rc::new(Pattern::Loop(Rc::new(LoopPat {
                var: lp.var.clone(),
                start: subst_expr(&lp.start, var, val),
                end: subst_expr(&lp.end, var, val),
                rep: sub(&lp.rep),
                tail: sub(&lp.tail),
            })))
        }
    }
}

fn subst_expr(e: &Rc<Expr>, var: &str, val: &Rc<Expr>) -> Rc<Expr> {
    let walk = |x: &Rc<Expr>| subst_expr(x, var, val);
    let walk_all = |xs: &[Rc<Expr>]| xs.iter().map(walk).collect::<Vec<_>>();
    match e.as_ref() {
        Expr::Int(_) => e.clone(),
        Expr::Var(name) => {
            if name == var {
                val.clone()
            } else {
                e.clone()
            }
        }
        Expr::IndexedVar(name, indices) => {
            Rc::new(Expr::IndexedVar(name.clone(), walk_all(indices)))
        }
        Expr::Data(name, args) => Rc::new(Expr::Data(name.clone(), walk_all(args))),
        Expr::Tuple(items) => Rc::new(Expr::Tuple(walk_all(items))),
        Expr::Collection(items) => Rc::new(Expr::Collection(walk_all(items))),
        Expr::Lambda(lam) => {
            if lam.params.iter().any(|p| p == var) {
                e.clone()
            } else {
                Rc::new(Expr::Lambda(Rc::new(crate::syntax::Lambda {
                    params: lam.params.clone(),
                    body: walk(&lam.body),
                })))
            }
        }
        Expr::Apply(f, args) => Rc::new(Expr::Apply(walk(f), walk_all(args))),
        Expr::MatchAll(mx) => Rc::new(Expr::MatchAll(subst_match(mx, var, val))),
        Expr::Match(mx) => Rc::new(Expr::Match(subst_match(mx, var, val))),
    }
}

fn subst_match(mx: &Rc<MatchExpr>, var: &str, val: &Rc<Expr>) -> Rc<MatchExpr> {
    let clauses = mx
        .clauses
        .iter()
        .map(|c| {
            if pattern_binds(&c.pattern, var) {
                c.clone()
            } else {
                Clause {
                    pattern: subst_pattern(&c.pattern, var, val),
                    body: subst_expr(&c.body, var, val),
                }
            }
        })
        .collect();
    Rc::new(MatchExpr {
        target: subst_expr(&mx.target, var, val),
        matcher: subst_expr(&mx.matcher, var, val),
        clauses,
    })
}

fn pattern_binds(p: &Rc<Pattern>, var: &str) -> bool {
    match p.as_ref() {
        Pattern::Var(name) => name == var,
        Pattern::IndexedVar(name, _) => name == var,
        Pattern::Inductive(_, args) => args.iter().any(|a| pattern_binds(a, var)),
        Pattern::Loop(lp) => {
            lp.var == var || pattern_binds(&lp.rep, var) || pattern_binds(&lp.tail, var)
        }
        Pattern::Wildcard | Pattern::Value(_) | Pattern::Placeholder => false,
    }
}

/// Fair enumeration of all bindings for one pattern against one target.
pub struct Search {
    env: Env,
    current: VecDeque<NodeStream>,
    survivors: Vec<NodeStream>,
    appends: Vec<NodeStream>,
    done: bool,
}

impl Search {
    pub fn new(env: Env, pattern: Rc<Pattern>, target: Thunk, matcher: MatcherVal) -> Search {
        let root = MatchState {
            atoms: AtomStack::Nil.push(MatchAtom {
                pattern,
                target,
                matcher,
            }),
            binds: Bindings::empty(),
        };
        let mut current = VecDeque::new();
        current.push_back(singleton(root));
        Search {
            env,
            current,
            survivors: Vec::new(),
            appends: Vec::new(),
            done: false,
        }
    }

    /// The next complete bindings, or `None` when the search space is
    /// exhausted. An error ends the search.
    pub fn next_result(&mut self) -> Option<EvalResult<Bindings>> {
        loop {
            if self.done {
                return None;
            }
            let Some(mut entry) = self.current.pop_front() else {
                if self.survivors.is_empty() && self.appends.is_empty() {
                    self.done = true;
                    return None;
                }
                self.current = self.survivors.drain(..).chain(self.appends.drain(..)).collect();
                continue;
            };
            match entry.next() {
                None => {}
                Some(Err(e)) => {
                    self.done = true;
                    return Some(Err(e));
                }
                Some(Ok(SearchNode::Leaf(binds))) => {
                    self.survivors.push(entry);
                    return Some(Ok(binds));
                }
                Some(Ok(SearchNode::Inner(state))) => match step(state, &self.env) {
                    Err(e) => {
                        self.done = true;
                        return Some(Err(e));
                    }
                    Ok(successors) => {
                        self.survivors.push(entry);
                        self.appends.push(successors);
                    }
                },
            }
        }
    }
}

impl Iterator for Search {
    type Item = EvalResult<Bindings>;

    fn next(&mut self) -> Option<Self::Item> {
        self.next_result()
    }
}

/// `match-all`: a lazy collection of the clause body evaluated under every
/// binding the search yields, in search order.
pub fn eval_match_all(mx: &Rc<MatchExpr>, env: &Env) -> EvalResult<Value> {
    let (target, matcher) = match_parts(mx, env)?;
    let clause = &mx.clauses[0];
    let search = Rc::new(RefCell::new(Search::new(
        env.clone(),
        clause.pattern.clone(),
        target,
        matcher,
    )));
    Ok(Value::Stream(results_stream(
        search,
        clause.body.clone(),
        env.clone(),
    )))
}

fn results_stream(search: Rc<RefCell<Search>>, body: Rc<Expr>, env: Env) -> StreamThunk {
    Lazy::new(move || match search.borrow_mut().next_result() {
        None => Ok(Stream::Nil),
        Some(Err(e)) => Err(e),
        Some(Ok(binds)) => {
            let head = Thunk::suspend(body.clone(), env.extend_binds(binds));
            let tail = results_stream(search.clone(), body, env);
            Ok(Stream::Cons(head, tail))
        }
    })
}

/// `match`: the first clause with any result wins; its body is evaluated
/// under the first bindings that clause yields.
pub fn eval_match(mx: &Rc<MatchExpr>, env: &Env) -> EvalResult<Value> {
    let (target, matcher) = match_parts(mx, env)?;
    for clause in &mx.clauses {
        let mut search = Search::new(
            env.clone(),
            clause.pattern.clone(),
            target.clone(),
            matcher.clone(),
        );
        match search.next_result() {
            None => continue,
            Some(Err(e)) => return Err(e),
            Some(Ok(binds)) => return eval(&clause.body, &env.extend_binds(binds)),
        }
    }
    Err(EvalError::NoMatch)
}

fn match_parts(mx: &Rc<MatchExpr>, env: &Env) -> EvalResult<(Thunk, MatcherVal)> {
    let target = Thunk::suspend(mx.target.clone(), env.clone());
    let matcher = eval(&mx.matcher, env)?.as_matcher()?;
    Ok((target, matcher))
}
