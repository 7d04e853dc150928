//! A small expression language over the word algebra and its series extension.
//!
//! ```text
//! sum     := product (('+' | '-') product)*
//! product := unary (['*'] unary)*          juxtaposition is the concatenation product
//! unary   := '-' unary | atom
//! atom    := INT ['/' INT] | x | y | u | v | z INT | z '{' INT '}'
//!          | NAME '(' sum (',' sum)* ')' | '(' sum ')'
//! ```
//!
//! Calls: `hp(a, b)`, `sh(a, b)`, `d(l, e)`, `Delta(e)`, `Rx(e)`, `RxInv(e)`,
//! `beta(m, n, e)`, `geom(e)`, `kernel(w)`.

mod eval;
mod parser;

pub use eval::{eval_expr, eval_str, Value};
pub use parser::{parse, Expr, ExprKind, Func};

use thiserror::Error;

/// A 1-based source position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl Location {
    pub(crate) fn of(src: &str, offset: usize) -> Self {
        let before = &src[..offset.min(src.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Location { line, column }
    }
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error("{at}: syntax error: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        at: Location,
        expected: Vec<String>,
        found: String,
    },
    #[error("{at}: {source}")]
    Eval {
        at: Location,
        #[source]
        source: crate::Error,
    },
}

impl ExprError {
    pub fn location(&self) -> Location {
        match self {
            ExprError::Syntax { at, .. } | ExprError::Eval { at, .. } => *at,
        }
    }
}
