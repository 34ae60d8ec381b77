//! Term syntax: AST, parser, printer, substitution and evaluation.

mod eval;
mod imp;
mod parse;
mod term;

pub use eval::{eval_imv, eval_imv_in, eval_mv, eval_mv_in, EvalError, Valuation};
pub use imp::ImpTerm;
pub use parse::{parse, ParseError};
pub use term::{is_identifier, Term, RESERVED_WORDS};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("`{0}` is a reserved word and cannot name a variable")]
    ReservedVariable(String),
    #[error("`{0}` is not a legal variable name")]
    IllegalVariable(String),
}
