use thiserror::Error;

/// Source position, 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unclosed or mismatched delimiter at {0}")]
    UnbalancedDelimiter(Pos),
    #[error("token `{token}` not allowed at top level at {pos}")]
    StrayToken { pos: Pos, token: String },
    #[error("`...` outside the repeat part of a loop pattern{}", detail_suffix(.0))]
    MisplacedEllipsis(String),
    #[error("{reason} in `{form}`")]
    Syntax { form: String, reason: String },
}

fn detail_suffix(s: &str) -> String {
    if s.is_empty() {
        String::new()
    } else {
        format!(": {s}")
    }
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::UnbalancedDelimiter(_) => "UnbalancedDelimiter",
            ParseError::StrayToken { .. } => "StrayToken",
            ParseError::MisplacedEllipsis(_) => "MisplacedEllipsis",
            ParseError::Syntax { .. } => "SyntaxError",
        }
    }

    pub fn syntax(form: impl std::fmt::Display, reason: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            form: form.to_string(),
            reason: reason.into(),
        }
    }

    /// One-line form used by the REPL and runners.
    pub fn report(&self) -> String {
        format!("Error: {}: {}", self.kind(), self)
    }
}

/// Runtime errors. Clone because thunks memoize failures.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("{0}")]
    UnboundVariable(String),
    #[error("{0} is not a function")]
    NotAFunction(String),
    #[error("expected {expected} argument(s), got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("value depends on itself")]
    BlackHole,
    #[error("{0}")]
    MatcherMismatch(String),
    #[error("loop bound evaluated to {0}, expected an integer")]
    NonIntegerLoopBound(String),
    #[error("no clause matched")]
    NoMatch,
    #[error("pattern variable {0} bound twice in one match")]
    DuplicateBinding(String),
    #[error("value pattern requires a matcher more specific than `something`")]
    ValuePatternUnderSomething,
    #[error("collection equality over more than {0} elements")]
    EqualityTooLarge(usize),
    #[error("expected a non-negative count, got {0}")]
    NegativeCount(String),
    #[error("expected {expected}, got {got}")]
    TypeMismatch { expected: &'static str, got: String },
    #[error("constructor {0} declared twice")]
    DuplicateConstructor(String),
    #[error("field of constructor {ctor} is {got}, expected a matcher")]
    UnknownFieldMatcher { ctor: String, got: String },
    #[error("oracle target exceeds {0} elements")]
    OracleTooLarge(usize),
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl EvalError {
    pub fn kind(&self) -> &'static str {
        match self {
            EvalError::UnboundVariable(_) => "UnboundVariable",
            EvalError::NotAFunction(_) => "NotAFunction",
            EvalError::ArityMismatch { .. } => "ArityMismatch",
            EvalError::BlackHole => "BlackHole",
            EvalError::MatcherMismatch(_) => "MatcherMismatch",
            EvalError::NonIntegerLoopBound(_) => "NonIntegerLoopBound",
            EvalError::NoMatch => "NoMatch",
            EvalError::DuplicateBinding(_) => "DuplicateBinding",
            EvalError::ValuePatternUnderSomething => "ValuePatternUnderSomething",
            EvalError::EqualityTooLarge(_) => "EqualityTooLarge",
            EvalError::NegativeCount(_) => "NegativeCount",
            EvalError::TypeMismatch { .. } => "TypeMismatch",
            EvalError::DuplicateConstructor(_) => "DuplicateConstructor",
            EvalError::UnknownFieldMatcher { .. } => "UnknownFieldMatcher",
            EvalError::OracleTooLarge(_) => "OracleTooLarge",
            EvalError::Internal(_) => "Internal",
        }
    }

    /// One-line form used by the REPL and by `run` on stderr.
    pub fn report(&self) -> String {
        format!("Error: {}: {}", self.kind(), self)
    }
}
