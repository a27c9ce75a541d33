//! Printing values in the language's own notation: `{…}` collections,
//! `[…]` tuples, `<Ctor …>` constructor terms. Finite values free of
//! functions re-parse to an equal value.

use crate::value::{EvalResult, Stream, Value};
use std::fmt::Write;

/// Renders `v`, forcing it as far as printing demands. Collections longer
/// than `limit` are cut off with a `...` marker so infinite streams print.
pub fn render(v: &Value, limit: usize) -> EvalResult<String> {
    let mut out = String::new();
    write_value(&mut out, v, limit)?;
    Ok(out)
}

fn write_value(out: &mut String, v: &Value, limit: usize) -> EvalResult<()> {
    match v {
        Value::Int(n) => {
            let _ = write!(out, "{n}");
        }
        Value::Data(name, fields) => {
            out.push('<');
            out.push_str(name);
            for f in fields {
                out.push(' ');
                write_value(out, &f.force()?, limit)?;
            }
            out.push('>');
        }
        Value::Tuple(items) => {
            out.push('[');
            for (i, t) in items.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                write_value(out, &t.force()?, limit)?;
            }
            out.push(']');
        }
        Value::Stream(s) => {
            out.push('{');
            let mut cell = s.clone();
            let mut printed = 0;
            loop {
                match cell.force()? {
                    Stream::Nil => break,
                    Stream::Cons(h, t) => {
                        if printed == limit {
                            if printed > 0 {
                                out.push(' ');
                            }
                            out.push_str("...");
                            break;
                        }
                        if printed > 0 {
                            out.push(' ');
                        }
                        write_value(out, &h.force()?, limit)?;
                        printed += 1;
                        cell = t;
                    }
                }
            }
            out.push('}');
        }
        Value::Closure(_) => out.push_str("#<lambda>"),
        Value::Builtin(def) => {
            let _ = write!(out, "#<builtin {}>", def.name);
        }
        Value::Matcher(_) => out.push_str("#<matcher>"),
    }
    Ok(())
}
