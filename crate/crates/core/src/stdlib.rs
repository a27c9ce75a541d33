//! Built-in functions and values installed in every fresh global
//! environment, plus the pattern-matching library loaded on top of them.

use crate::error::EvalError;
use crate::eval::apply;
use crate::matchers::structural_eq;
use crate::value::{
    BuiltinDef, Env, EvalResult, Lazy, MatcherVal, Stream, StreamThunk, Thunk, Value,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::rc::Rc;

/// Library definitions written in the language itself. `member?` and
/// `delete` shadow nothing; the pattern-matching `map`/`take` are loaded
/// as `map-pm`/`take-pm` because the built-in `map` and `take` are what
/// their own bodies (and the combination examples) call.
pub const LIBRARY_SRC: &str = "\
(define $member? (lambda [$x $xs] (match xs (multiset eq)
  {[<cons ,x _> <True>] [_ <False>]})))

(define $delete (lambda [$x $xs] (match xs (list eq)
  {[<join $hs <cons ,x $ts>> (append hs ts)] [_ xs]})))

(define $map-pm (lambda [$xs $fn] (match-all xs (list something)
  [<join _ <cons $x _>> (fn x)])))

(define $take-pm (lambda [$n $xs] (match xs (list something)
  {[(loop $i [1 n] <cons $a_i ...> _)
    (map (lambda [$i] a_i) (take n nats))]})))
";

macro_rules! builtins {
    ($($global:ident = $name:literal, $min:literal $(..= $max:literal)?, $f:ident;)*) => {
        $(static $global: BuiltinDef = BuiltinDef {
            name: $name,
            arity: ($min, builtins!(@max $($max)?)),
            run: $f,
        };)*
        /// Installs every builtin plus the matcher and stream globals.
        pub fn install(env: &Env) {
            $(env.define($name, Lazy::ready(Value::Builtin(&$global)));)*
            env.define("something", Lazy::ready(Value::Matcher(MatcherVal::Something)));
            env.define("integer", Lazy::ready(Value::Matcher(MatcherVal::Integer)));
            env.define("eq", Lazy::ready(Value::Matcher(MatcherVal::Eq)));
            env.define("nats", Lazy::ready(Value::Stream(count_from(BigInt::one()))));
            env.define("primes", Lazy::ready(Value::Stream(primes_from(BigInt::from(2)))));
        }
    };
    (@max $max:literal) => { Some($max) };
    (@max) => { None };
}

builtins! {
    ADD = "+", 2, bi_add;
    SUB = "-", 2, bi_sub;
    MUL = "*", 2, bi_mul;
    MOD = "mod", 2..=2, bi_mod;
    EQQ = "eq?", 2..=2, bi_eq;
    LT = "lt?", 2..=2, bi_lt;
    LTE = "lte?", 2..=2, bi_lte;
    GT = "gt?", 2..=2, bi_gt;
    GTE = "gte?", 2..=2, bi_gte;
    IF = "if", 3..=3, bi_if;
    TAKE = "take", 2..=2, bi_take;
    MAP = "map", 2..=2, bi_map;
    APPEND = "append", 2..=2, bi_append;
    LIST = "list", 1..=1, bi_list;
    MULTISET = "multiset", 1..=1, bi_multiset;
    SET = "set", 1..=1, bi_set;
}

fn fold_ints(
    args: &[Thunk],
    f: fn(BigInt, &BigInt) -> BigInt,
) -> EvalResult<Value> {
    let mut acc = args[0].force()?.as_int()?.clone();
    for t in &args[1..] {
        acc = f(acc, t.force()?.as_int()?);
    }
    Ok(Value::Int(acc))
}

fn bi_add(args: &[Thunk]) -> EvalResult<Value> {
    fold_ints(args, |a, b| a + b)
}

fn bi_sub(args: &[Thunk]) -> EvalResult<Value> {
    fold_ints(args, |a, b| a - b)
}

fn bi_mul(args: &[Thunk]) -> EvalResult<Value> {
    fold_ints(args, |a, b| a * b)
}

fn bi_mod(args: &[Thunk]) -> EvalResult<Value> {
    let a = args[0].force()?.as_int()?.clone();
    let bv = args[1].force()?;
    let b = bv.as_int()?;
    if b.is_zero() {
        return Err(EvalError::TypeMismatch {
            expected: "a nonzero divisor",
            got: "0".into(),
        });
    }
    Ok(Value::Int(a % b))
}

fn bi_eq(args: &[Thunk]) -> EvalResult<Value> {
    Ok(Value::boolean(structural_eq(
        &args[0].force()?,
        &args[1].force()?,
    )?))
}

fn int_cmp(args: &[Thunk], keep: fn(std::cmp::Ordering) -> bool) -> EvalResult<Value> {
    let av = args[0].force()?;
    let bv = args[1].force()?;
    Ok(Value::boolean(keep(av.as_int()?.cmp(bv.as_int()?))))
}

fn bi_lt(args: &[Thunk]) -> EvalResult<Value> {
    int_cmp(args, std::cmp::Ordering::is_lt)
}

fn bi_lte(args: &[Thunk]) -> EvalResult<Value> {
    int_cmp(args, std::cmp::Ordering::is_le)
}

fn bi_gt(args: &[Thunk]) -> EvalResult<Value> {
    int_cmp(args, std::cmp::Ordering::is_gt)
}

fn bi_gte(args: &[Thunk]) -> EvalResult<Value> {
    int_cmp(args, std::cmp::Ordering::is_ge)
}

fn bi_if(args: &[Thunk]) -> EvalResult<Value> {
    let cond = args[0].force()?;
    match &cond {
        Value::Data(name, fields) if fields.is_empty() && &**name == "True" => args[1].force(),
        Value::Data(name, fields) if fields.is_empty() && &**name == "False" => args[2].force(),
        other => Err(EvalError::TypeMismatch {
            expected: "a boolean",
            got: other.type_name().into(),
        }),
    }
}

fn bi_take(args: &[Thunk]) -> EvalResult<Value> {
    let n = args[0].force()?.as_int()?.clone();
    if n.is_negative() {
        return Err(EvalError::NegativeCount(n.to_string()));
    }
    let xs = args[1].force()?.as_stream()?;
    Ok(Value::Stream(take_stream(n, xs)))
}

fn take_stream(n: BigInt, xs: StreamThunk) -> StreamThunk {
    if n.is_zero() {
        return Stream::empty();
    }
    Lazy::new(move || match xs.force()? {
        Stream::Nil => Ok(Stream::Nil),
        Stream::Cons(h, t) => Ok(Stream::Cons(h, take_stream(n - 1, t))),
    })
}

/// `map` accepts the function in either position: the library defines it
/// collection-first while the combination examples call it function-first,
/// so the builtin looks at the first argument and picks.
fn bi_map(args: &[Thunk]) -> EvalResult<Value> {
    let first = args[0].force()?;
    let (f, xs) = if matches!(first, Value::Closure(_) | Value::Builtin(_)) {
        (first, args[1].force()?)
    } else {
        (args[1].force()?, first)
    };
    Ok(Value::Stream(map_stream(f, xs.as_stream()?)))
}

fn map_stream(f: Value, xs: StreamThunk) -> StreamThunk {
    Lazy::new(move || match xs.force()? {
        Stream::Nil => Ok(Stream::Nil),
        Stream::Cons(h, t) => {
            let g = f.clone();
            Ok(Stream::Cons(
                Lazy::new(move || apply(g, vec![h])),
                map_stream(f, t),
            ))
        }
    })
}

fn bi_append(args: &[Thunk]) -> EvalResult<Value> {
    let a = args[0].force()?.as_stream()?;
    let b = args[1].force()?.as_stream()?;
    Ok(Value::Stream(append_stream(a, b)))
}

fn append_stream(a: StreamThunk, b: StreamThunk) -> StreamThunk {
    Lazy::new(move || match a.force()? {
        Stream::Nil => b.force(),
        Stream::Cons(h, t) => Ok(Stream::Cons(h, append_stream(t, b))),
    })
}

fn collection_matcher(args: &[Thunk], make: fn(Rc<MatcherVal>) -> MatcherVal) -> EvalResult<Value> {
    let elem = args[0].force()?.as_matcher()?;
    Ok(Value::Matcher(make(Rc::new(elem))))
}

fn bi_list(args: &[Thunk]) -> EvalResult<Value> {
    collection_matcher(args, MatcherVal::List)
}

fn bi_multiset(args: &[Thunk]) -> EvalResult<Value> {
    collection_matcher(args, MatcherVal::Multiset)
}

fn bi_set(args: &[Thunk]) -> EvalResult<Value> {
    collection_matcher(args, MatcherVal::Set)
}

fn count_from(n: BigInt) -> StreamThunk {
    Lazy::new(move || {
        let next = &n + 1;
        Ok(Stream::Cons(Lazy::ready(Value::Int(n)), count_from(next)))
    })
}

fn primes_from(candidate: BigInt) -> StreamThunk {
    Lazy::new(move || {
        let mut c = candidate;
        while !is_prime(&c) {
            c += 1;
        }
        let next = &c + 1;
        Ok(Stream::Cons(Lazy::ready(Value::Int(c)), primes_from(next)))
    })
}

fn is_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if n < &two {
        return false;
    }
    if n == &two {
        return true;
    }
    if (n % &two).is_zero() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}
