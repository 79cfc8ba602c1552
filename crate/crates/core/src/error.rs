use thiserror::Error;

use crate::exprparse::ParseError;
use crate::nondeg::DegenerateFace;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("the zero polynomial has no term ideal")]
    ZeroPolynomial,

    #[error("operation undefined for the zero ideal")]
    ZeroIdeal,

    #[error("operation undefined for the unit ideal")]
    UnitIdeal,

    #[error("coefficient must be a positive rational, got {0}")]
    NonPositiveCoefficient(String),

    #[error("dimension {n} exceeds the configured cap of {cap}")]
    DimensionCap { n: usize, cap: usize },

    #[error("polyhedron has {count} facets, above the configured cap of {cap}")]
    FacetCap { count: usize, cap: usize },

    #[error("the ambient dimension must be at least 1")]
    EmptyDimension,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("face does not belong to the Newton polyhedron of the polynomial")]
    FaceMismatch,

    #[error("expected a monomial, got `{0}`")]
    NotMonomial(String),

    #[error("the toric oracle only handles two variables, got {0}")]
    OracleDimension(usize),

    #[error("polynomial is degenerate on {} face(s)", .witnesses.len())]
    Degenerate { witnesses: Vec<DegenerateFace> },

    #[error("inconclusive: {0}")]
    Inconclusive(String),
}

impl Error {
    /// Stable machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse_error",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::ZeroIdeal => "zero_ideal",
            Error::UnitIdeal => "unit_ideal",
            Error::NonPositiveCoefficient(_) => "nonpositive_coefficient",
            Error::DimensionCap { .. } => "dimension_cap",
            Error::FacetCap { .. } => "facet_cap",
            Error::EmptyDimension => "empty_dimension",
            Error::Overflow(_) => "overflow",
            Error::FaceMismatch => "face_mismatch",
            Error::NotMonomial(_) => "not_monomial",
            Error::OracleDimension(_) => "oracle_dimension",
            Error::Degenerate { .. } => "degenerate_input",
            Error::Inconclusive(_) => "inconclusive",
        }
    }
}
