use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("relation element mixes path lengths {lengths:?}")]
    NonHomogeneous { lengths: Vec<usize> },
    #[error("relation of length {length} is not quadratic")]
    NotQuadratic { length: usize },
    #[error("graded component at degree cap {cap} is nonzero")]
    DegreeCapExceeded { cap: usize },
    #[error("degree-2 relations do not present the trivial extension; dimensions first differ in degree {degree}")]
    NonQuadratic { degree: usize },
    #[error("algebra is not properly graded: {0}")]
    NotProperlyGraded(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("vertex {0:?} is not a source of the slice")]
    NotASource(String),
    #[error("vertex {0:?} is neither a source nor a sink of the slice")]
    NotASink(String),
    #[error("parameter {0} is zero")]
    ParameterZero(String),
    #[error("group orders {0:?} are below the supported minimum of 4")]
    SizeTooSmall(Vec<usize>),
    #[error("unsupported family {0}")]
    UnsupportedFamily(String),
    #[error("multiplicity {value} for ({from}, {to}) is not an integer")]
    NotIntegerMultiplicity { from: usize, to: usize, value: f64 },
    #[error("character table is not orthonormal: {0}")]
    NonOrthonormalTable(String),
    #[error("constant term {constant} is not a unit")]
    NonUnitConstantTerm { constant: String },
    #[error("graded dimensions are not Loewy bounded: {0}")]
    NotLoewyBounded(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse_error",
            Error::Validation(_) => "validation_error",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::NonHomogeneous { .. } => "non_homogeneous",
            Error::NotQuadratic { .. } => "not_quadratic",
            Error::DegreeCapExceeded { .. } => "degree_cap_exceeded",
            Error::NonQuadratic { .. } => "non_quadratic",
            Error::NotProperlyGraded(_) => "not_properly_graded",
            Error::WindowTooSmall(_) => "window_too_small",
            Error::NotASource(_) => "not_a_source",
            Error::NotASink(_) => "not_a_sink",
            Error::ParameterZero(_) => "parameter_zero",
            Error::SizeTooSmall(_) => "size_too_small",
            Error::UnsupportedFamily(_) => "unsupported_family",
            Error::NotIntegerMultiplicity { .. } => "not_integer_multiplicity",
            Error::NonOrthonormalTable(_) => "non_orthonormal_table",
            Error::NonUnitConstantTerm { .. } => "non_unit_constant_term",
            Error::NotLoewyBounded(_) => "not_loewy_bounded",
            Error::Io(_) => "io_error",
        }
    }

    /// Input problems (exit 2) as opposed to mathematical failures (exit 3).
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Parse(_)
                | Error::Validation(_)
                | Error::UnknownVertex(_)
                | Error::NonHomogeneous { .. }
                | Error::ParameterZero(_)
                | Error::SizeTooSmall(_)
                | Error::UnsupportedFamily(_)
                | Error::Io(_)
                | Error::NotASource(_)
                | Error::NotASink(_)
                | Error::WindowTooSmall(_)
        )
    }
}
