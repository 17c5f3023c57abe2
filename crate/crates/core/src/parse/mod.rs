//! Text formats: `.dfl` defeasible theories and `.lp` ground programs.

mod dfl;
mod lp;

use std::fmt;

use serde::Serialize;

pub use dfl::{parse_theory, render_theory};
pub use lp::{parse_atom, parse_program, render_program};

/// A positioned parse or validation error. Line and column are 1-based,
/// columns count characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SourceDiagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SourceDiagnostic {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        SourceDiagnostic {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for SourceDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SourceDiagnostic {}

/// Strips a `%` comment, returning the code part of a line.
fn strip_comment(line: &str) -> &str {
    match line.find('%') {
        Some(i) => &line[..i],
        None => line,
    }
}
