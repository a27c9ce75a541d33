//! Expression evaluation. Arguments, collection elements, and constructor
//! fields all suspend as thunks; only variable reference, application, and
//! matching force anything.

use crate::error::EvalError;
use crate::syntax::Expr;
use crate::value::{ClosureVal, Env, EvalResult, Key, Stream, Thunk, Value};
use std::rc::Rc;

pub fn eval(expr: &Rc<Expr>, env: &Env) -> EvalResult<Value> {
    match &**expr {
        Expr::Int(n) => Ok(Value::Int(n.clone())),
        Expr::Var(name) => {
            let key = Key::plain(name.clone());
            match env.lookup(&key) {
                Some(t) => t.force(),
                None => Err(EvalError::UnboundVariable(name.clone())),
            }
        }
        Expr::IndexedVar(name, idxs) => {
            let mut indices = Vec::with_capacity(idxs.len());
            for ix in idxs {
                indices.push(eval(ix, env)?.as_int()?.clone());
            }
            let key = Key::indexed(name.clone(), indices);
            match env.lookup(&key) {
                Some(t) => t.force(),
                None => Err(EvalError::UnboundVariable(key.to_string())),
            }
        }
        Expr::Data(name, args) => Ok(Value::data(name, suspend_all(args, env))),
        Expr::Tuple(parts) => Ok(Value::Tuple(suspend_all(parts, env))),
        Expr::Collection(elems) => Ok(Value::Stream(Stream::from_thunks(suspend_all(elems, env)))),
        Expr::Lambda(l) => Ok(Value::Closure(Rc::new(ClosureVal {
            lambda: l.clone(),
            env: env.clone(),
        }))),
        Expr::Apply(f, args) => {
            let fv = eval(f, env)?;
            apply(fv, suspend_all(args, env))
        }
        Expr::MatchAll(mx) => crate::engine::eval_match_all(mx, env),
        Expr::Match(mx) => crate::engine::eval_match(mx, env),
    }
}

fn suspend_all(exprs: &[Rc<Expr>], env: &Env) -> Vec<Thunk> {
    exprs
        .iter()
        .map(|e| Thunk::suspend(e.clone(), env.clone()))
        .collect()
}

pub fn apply(f: Value, args: Vec<Thunk>) -> EvalResult<Value> {
    match f {
        Value::Closure(c) => {
            if c.lambda.params.len() != args.len() {
                return Err(EvalError::ArityMismatch {
                    expected: c.lambda.params.len(),
                    got: args.len(),
                });
            }
            let frame = c.lambda.params.iter().cloned().zip(args).collect();
            eval(&c.lambda.body, &c.env.extend_params(frame))
        }
        Value::Builtin(def) => {
            let (min, max) = def.arity;
            let ok = args.len() >= min && max.map_or(true, |m| args.len() <= m);
            if !ok {
                return Err(EvalError::ArityMismatch {
                    expected: min,
                    got: args.len(),
                });
            }
            (def.run)(&args)
        }
        other => Err(EvalError::NotAFunction(other.type_name().into())),
    }
}
