//! Exact arithmetic: rationals, Puiseux-Laurent polynomials in x and y,
//! truncated series in t, and one-variable polynomials.

mod parse;
mod poly;
pub mod rational;
mod series;
mod univariate;

pub use parse::{parse, parse_in};
pub use poly::{jacobian, Mono, PuiseuxPoly, Ring};
pub use rational::{exp, int, rat, Exp, Rational};
pub use series::TruncSeries;
pub use univariate::UPoly;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AlgError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(Ring, Ring),
    #[error("monomial x^{}*y^{} is not in ring {ring}", mono.x, mono.y)]
    OutsideRing { mono: Mono, ring: Ring },
    #[error("{0}")]
    Domain(String),
}
