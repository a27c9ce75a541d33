//! One interpreter instance: a global environment, configuration, and the
//! top-level form dispatcher shared by the REPL, file runner, and tests.

use crate::error::{EvalError, ParseError};
use crate::render::render;
use crate::syntax::{parse_program, MatcherDecl, TopForm};
use crate::value::{AdtCtor, AdtMatcher, data_ctor_name, Env, EvalResult, Lazy, Thunk, Value};
use std::rc::Rc;

#[derive(Clone, Debug)]
pub struct RunConfig {
    /// Collections longer than this print a trailing `...`.
    pub print_limit: usize,
    /// Upper size bound for the brute-force enumeration used in tests.
    pub oracle_cap: usize,
    /// Whether to load the pattern-matching library on startup.
    pub load_stdlib: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            print_limit: 100,
            oracle_cap: 7,
            load_stdlib: true,
        }
    }
}

#[derive(Debug)]
pub enum RunError {
    Parse(ParseError),
    Eval(EvalError),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Parse(e) => write!(f, "{}", e.report()),
            RunError::Eval(e) => write!(f, "{}", e.report()),
        }
    }
}

impl From<ParseError> for RunError {
    fn from(e: ParseError) -> Self {
        RunError::Parse(e)
    }
}

impl From<EvalError> for RunError {
    fn from(e: EvalError) -> Self {
        RunError::Eval(e)
    }
}

pub struct Session {
    env: Env,
    config: RunConfig,
}

impl Session {
    pub fn new(config: RunConfig) -> Session {
        let env = Env::new_global();
        crate::stdlib::install(&env);
        let mut session = Session { env, config };
        if session.config.load_stdlib {
            session
                .run_source(crate::stdlib::LIBRARY_SRC)
                .expect("bundled library loads");
        }
        session
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    pub fn config(&self) -> &RunConfig {
        &self.config
    }

    /// Evaluates one top-level form. Definitions yield no output; a bare
    /// expression yields its rendered value.
    pub fn eval_top(&mut self, form: &TopForm) -> EvalResult<Option<String>> {
        match form {
            TopForm::Define(name, expr) => {
                self.env
                    .define(name, Thunk::suspend(expr.clone(), self.env.clone()));
                Ok(None)
            }
            TopForm::DefineMatcher(decl) => {
                let matcher = self.declare_matcher(decl)?;
                self.env.define(&decl.name, Lazy::ready(matcher));
                Ok(None)
            }
            TopForm::Expr(expr) => {
                let v = crate::eval::eval(expr, &self.env)?;
                Ok(Some(render(&v, self.config.print_limit)?))
            }
        }
    }

    fn declare_matcher(&self, decl: &MatcherDecl) -> EvalResult<Value> {
        let mut ctors: Vec<AdtCtor> = Vec::new();
        for (pattern_name, field_exprs) in &decl.ctors {
            if ctors.iter().any(|c| &c.pattern_name == pattern_name) {
                return Err(EvalError::DuplicateConstructor(pattern_name.clone()));
            }
            let mut fields = Vec::new();
            for fe in field_exprs {
                let v = crate::eval::eval(fe, &self.env)?;
                match v.as_matcher() {
                    Ok(m) => fields.push(m),
                    Err(_) => {
                        return Err(EvalError::UnknownFieldMatcher {
                            ctor: pattern_name.clone(),
                            got: v.type_name().into(),
                        })
                    }
                }
            }
            ctors.push(AdtCtor {
                pattern_name: pattern_name.clone(),
                data_name: data_ctor_name(pattern_name),
                fields,
            });
        }
        Ok(Value::Matcher(crate::value::MatcherVal::Adt(Rc::new(
            AdtMatcher {
                name: decl.name.clone(),
                ctors,
            },
        ))))
    }

    /// Parses and runs a whole source text, collecting rendered outputs of
    /// bare expressions. Stops at the first error.
    pub fn run_source(&mut self, src: &str) -> Result<Vec<String>, RunError> {
        let forms = parse_program(src)?;
        let mut out = Vec::new();
        for form in &forms {
            if let Some(line) = self.eval_top(form)? {
                out.push(line);
            }
        }
        Ok(out)
    }
}
