//! An interpreter for a small lazy functional language whose pattern
//! matching works against non-free data: lists, multisets, sets, and
//! declared constructor terms. Patterns can be non-linear (value patterns
//! refer to earlier bindings), can yield many or infinitely many results
//! (enumerated fairly), and can repeat via loop patterns.

pub mod engine;
pub mod error;
pub mod eval;
pub mod matchers;
pub mod oracle;
pub mod render;
pub mod session;
pub mod stdlib;
pub mod syntax;
pub mod value;

pub use error::{EvalError, ParseError};
pub use session::{RunConfig, RunError, Session};
