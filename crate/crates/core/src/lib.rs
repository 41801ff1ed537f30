//! Exact construction of caustics by reflection of plane algebraic curves,
//! the invariants in their degree and class formulas, and independent
//! symbolic and numeric checks of both.

pub mod algebra;
pub mod error;
pub mod harness;
pub mod implicitize;
pub mod localinv;
pub mod numericlab;
pub mod projgeom;

pub use error::{Error, Result};
