//! Exact arithmetic over Q(i) and its one-level extensions, and sparse
//! polynomial algebra on top of it.

pub mod binary;
pub mod extension;
pub mod gaussian;
pub mod gcd;
pub mod modp;
pub mod mpoly;
pub mod parse;
pub mod resultant;
pub mod scalar;
pub mod upoly;

pub use binary::{restrict_to_line, BinaryForm};
pub use extension::{run_split, ExtElem, Modulus};
pub use gaussian::GaussianRational;
pub use gcd::{divides, gcd, gcd_many, square_free_part};
pub use mpoly::{MPoly, Monomial, Poly, Vars};
pub use parse::{parse_point, parse_poly, parse_scalar};
pub use resultant::resultant;
pub use scalar::Scalar;
pub use upoly::UPoly;
