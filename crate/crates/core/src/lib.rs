//! Symbolic-power containment for ideals of three-variable polynomial rings.

pub mod criterion;
pub mod curves;
pub mod error;
pub mod groebner;
pub mod idealops;
pub mod named;
pub mod polyring;
pub mod symbolic;

pub use error::{Error, LimitKind, Result};
