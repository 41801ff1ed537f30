use thiserror::Error;

use crate::algebra::upoly::UPoly;
use crate::algebra::GaussianRational;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the toolkit can report.
///
/// Variants are grouped by the layer that raises them; [`Error::kind`] gives a
/// stable machine-readable tag for each.
#[derive(Debug, Clone, Error)]
pub enum Error {
    // --- parsing ---
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("division by zero")]
    DivisionByZero,

    // --- algebra ---
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("both polynomials are constant in `{var}`")]
    ConstantInVariable { var: String },
    #[error("polynomials live in different variable sets")]
    VariableMismatch,
    #[error("elements of different algebraic extensions cannot be combined")]
    ExtensionMismatch,
    #[error("extension tower exceeded: a second algebraic extension would be required")]
    TowerExceeded,
    /// Raised by arithmetic in a split-able extension ring when an element turns
    /// out to be a zero divisor. `factor` is a proper monic factor of the modulus.
    #[error("zero divisor found in extension ring")]
    ZeroDivisor { factor: UPoly<GaussianRational> },
    #[error("the curve contains the line as a component")]
    LineIsComponent,

    // --- geometry ---
    #[error("arguments are projectively equal: {0}")]
    EqualArguments(&'static str),
    #[error("isotropic mirror: a^2+b^2 = 0")]
    IsotropicMirror,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("singular point: gradient vanishes")]
    SingularPoint,
    #[error("normal line undefined at this point")]
    NormalUndefined,
    #[error("point is not in the cyclic-contour complement C0")]
    NotInC0,
    #[error("source coincides with the curve point")]
    SourceAtPoint,
    #[error("reflected line undefined: reflected source equals the curve point")]
    ReflectionDegenerate,
    #[error("degenerate wedge in tau: {0}")]
    TauDegenerate(&'static str),
    #[error("degenerate caustic: point")]
    DegenerateCaustic,

    // --- local analysis ---
    #[error("Puiseux truncation insufficient after {0} Newton iterations")]
    TruncationInsufficient(usize),
    #[error("non-generic chart after {0} retries")]
    ChartFailure(usize),

    // --- elimination ---
    #[error("degenerate image: the map is constant on the curve")]
    DegenerateImage,
    #[error("elimination failed: {0}")]
    EliminationFailed(String),
    #[error("uncertified image curve: {0}")]
    Uncertified(String),

    // --- numerics ---
    #[error("numeric degree did not stabilize: tally {0:?}")]
    Unstable(Vec<(usize, usize)>),
    #[error("sampling failed: {0}")]
    SamplingFailed(String),
    #[error("no real points found in the window")]
    NoRealPoints,

    // --- harness ---
    #[error("no generic source found after {0} draws")]
    NoGenericSource(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short stable tag used in machine-readable diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "syntax",
            Error::UnknownVariable { .. } => "unknown_variable",
            Error::DivisionByZero => "division_by_zero",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::ConstantInVariable { .. } => "constant_in_variable",
            Error::VariableMismatch => "variable_mismatch",
            Error::ExtensionMismatch => "extension_mismatch",
            Error::TowerExceeded => "extension_tower_exceeded",
            Error::ZeroDivisor { .. } => "zero_divisor",
            Error::LineIsComponent => "line_is_component",
            Error::EqualArguments(_) => "equal_arguments",
            Error::IsotropicMirror => "isotropic_mirror",
            Error::NotOnCurve => "not_on_curve",
            Error::SingularPoint => "singular_point",
            Error::NormalUndefined => "normal_undefined",
            Error::NotInC0 => "not_in_c0",
            Error::SourceAtPoint => "source_at_point",
            Error::ReflectionDegenerate => "reflection_degenerate",
            Error::TauDegenerate(_) => "tau_degenerate",
            Error::DegenerateCaustic => "degenerate_caustic",
            Error::TruncationInsufficient(_) => "truncation_insufficient",
            Error::ChartFailure(_) => "chart_failure",
            Error::DegenerateImage => "degenerate_image",
            Error::EliminationFailed(_) => "elimination_failed",
            Error::Uncertified(_) => "uncertified",
            Error::Unstable(_) => "unstable",
            Error::SamplingFailed(_) => "sampling_failed",
            Error::NoRealPoints => "no_real_points",
            Error::NoGenericSource(_) => "no_generic_source",
            Error::InvalidInput(_) => "invalid_input",
        }
    }

    /// True for malformed user input, as opposed to computational failure.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownVariable { .. }
                | Error::DivisionByZero
                | Error::InvalidInput(_)
        )
    }
}
