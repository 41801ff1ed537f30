//! Floating-point companion computations.

pub mod eval;
pub mod roots;
pub mod sample;
pub mod trace;

pub use sample::{birationality_test, sample_curve, BirationalityReport, NumericPoint, Verdict};
pub use trace::{real_trace, to_csv, to_svg, Segment, Window};
