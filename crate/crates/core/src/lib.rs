//! Exact symbolic calculus for linear partial differential operators with
//! rational-function coefficients.
//!
//! The crate provides:
//! - exact arithmetic in Q(x1..xn) (`coeff`),
//! - matrices of differential operators between labeled component spaces,
//!   with composition, formal adjoints and an Euler total-divergence test
//!   (`op`),
//! - left Gröbner bases and syzygies over the rational Weyl algebra, the
//!   engine behind compatibility conditions (`engine`),
//! - differential sequences and the five-step parametrization test (`seq`),
//! - a gallery of linearized-gravity operators over a metric together with
//!   dimension tables and named identity checks (`gallery`, `checks`),
//! - a line-oriented operator document format (`textfmt`).

pub mod budget;
pub mod checks;
pub mod coeff;
pub mod engine;
pub mod error;
pub mod example23;
pub mod gallery;
pub mod op;
pub mod props;
pub mod random;
pub mod seq;
pub mod textfmt;

pub use budget::Budget;
pub use error::{Error, Result};
