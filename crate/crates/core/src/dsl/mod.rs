//! A small expression language for candidate mean systems.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := base ('^' factor)?
//! base    := number | 'w' | 'x' | reducer '(' expr ')' | '(' expr ')' | '-' base
//! reducer := 'sum' | 'prod' | 'max' | 'min'
//! ```
//!
//! Inside a reducer body `w` and `x` stand for `w_i` and `x_i`, and the
//! reducer ranges over every index, zero-weight ones included. Reducers do
//! not nest. `0^0` evaluates to 1, so `prod(x^w)` is the geometric mean.

mod eval;
mod lexer;
mod parser;

use std::fmt;

use thiserror::Error;

pub use eval::eval_mean_expr;
pub use parser::parse_mean_expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reducer {
    Sum,
    Prod,
    Max,
    Min,
}

impl Reducer {
    fn name(self) -> &'static str {
        match self {
            Reducer::Sum => "sum",
            Reducer::Prod => "prod",
            Reducer::Max => "max",
            Reducer::Min => "min",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MeanExpr {
    Literal(f64),
    /// `w_i` inside a reducer.
    Weight,
    /// `x_i` inside a reducer.
    Value,
    Reduce(Reducer, Box<MeanExpr>),
    Binary(BinOp, Box<MeanExpr>, Box<MeanExpr>),
    Neg(Box<MeanExpr>),
}

/// Prints fully parenthesized source that parses back to the same tree.
impl fmt::Display for MeanExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeanExpr::Literal(v) => write!(f, "{v:?}"),
            MeanExpr::Weight => f.write_str("w"),
            MeanExpr::Value => f.write_str("x"),
            MeanExpr::Reduce(r, body) => write!(f, "{}({body})", r.name()),
            MeanExpr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
            MeanExpr::Neg(e) => write!(f, "-{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(", "))
    }
}
