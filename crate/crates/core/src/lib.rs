//! Means defined by the intersection points of two Taylor polynomials of the
//! same function, together with exact-arithmetic tooling for the polynomial
//! identities behind them.

// Negated comparisons are how NaN is routed to the failure branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod function;
pub mod lab;
pub mod means;
pub mod poly;
pub mod quad;
pub mod roots;

pub use function::{FunctionError, FunctionSpec};
pub use means::{mean, MeanError, MeanResult, Tolerances};
pub use poly::{FloatPoly, Polynomial, RatPoly};
