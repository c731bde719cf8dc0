//! Exact coefficient arithmetic: Q, Q[x1..xn] and the field K = Q(x1..xn).

mod multipoly;
mod parse;
mod ratfunc;

pub use multipoly::{rat, rat_frac, Monomial, MultiPoly, Rat};
pub use parse::parse_coeff;
pub use ratfunc::RatFunc;
