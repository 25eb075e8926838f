//! Exact-arithmetic necessary conditions for the existence of perfect codes
//! in the Johnson scheme J(n,w) and in doubly-constant-weight spaces.
//!
//! The crate has three layers:
//!
//! * an oracle layer ([`johnson`], [`designs`]) that works with concrete
//!   codes and block designs by exhaustive enumeration on small instances;
//! * a symbolic layer ([`exactmath`], [`moments`], [`pell`]) that evaluates
//!   strength polynomials, configuration-distribution recurrences and
//!   binomial-moment closed forms in exact integer/rational arithmetic;
//! * a rule engine ([`sieve`]) that applies every checkable necessary
//!   condition to hypothetical parameter points, pointwise or over ranges,
//!   and reproduces the known exclusion tables.
//!
//! No floating point is used anywhere a verdict depends on a value.

pub mod designs;
pub mod exactmath;
pub mod johnson;
pub mod moments;
pub mod pell;
pub mod sieve;
