//! Polynomial rings over prime fields and ℚ.

pub mod field;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use field::{CoefficientField, Field, PrimeField, Rationals, DEFAULT_PRIME};
pub use monomial::{Monomial, TermOrder, MAX_EXPONENT};
pub use parse::{format_monomial, parse_poly, parse_poly_list};
pub use poly::{Polynomial, Ring, RingRef, Term};
