//! Expression language for metric components, sections and curves.
//!
//! ```text
//! expr     = term { ("+" | "-") term } ;
//! term     = unary { ("*" | "/") unary } ;
//! unary    = "-" unary | power ;
//! power    = primary [ "^" exponent ] ;
//! exponent = [ "-" ] ( integer | "(" exponent ")" ) [ "^" exponent ] ;
//! primary  = number | ident "(" expr ")" | ident | "(" expr ")" ;
//! ident    = ( letter | "_" ) { letter | digit | "_" } ;
//! number   = digits [ "." digits ] [ ("e" | "E") [ "+" | "-" ] digits ]
//!          | "." digits [ exponent-part ] ;
//! ```
//!
//! Functions: `sin cos tan exp log sqrt sinh cosh tanh abs`. The names `pi`
//! and `e` are read-only constants.

mod ast;
mod diff;
mod eval;
mod parser;

use thiserror::Error;

pub use ast::{Expr, Func};
pub use diff::{differentiate, simplify};
pub use eval::{constant, eval, Binding, CONSTANTS};
pub use parser::parse;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("math domain error: {0}")]
    MathDomain(String),
}
