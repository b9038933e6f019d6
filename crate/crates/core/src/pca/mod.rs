//! The computational substrate: naturals as programs, a distinguished
//! tupling function, and recursion-theorem fixed points under a fuel budget.

mod eval;
mod parse;
mod term;
mod tuple;

pub use eval::{CodeHandle, EvalBudget, EvalError, Pca};
pub use parse::{parse_term, TermParseError};
pub use term::PcaTerm;
pub use tuple::{arity, decode_tuple, encode_tuple, nat, pair, proj, unpair, Nat, ProjOutOfRange};
