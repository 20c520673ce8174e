use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// locate the offending input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum HoroError {
    #[error("unsupported root system series `{0}`")]
    UnsupportedSeries(String),
    #[error("invalid rank {rank} for series {series}")]
    InvalidRank { series: String, rank: usize },
    #[error("vector is not a root: {0}")]
    NotARoot(String),
    #[error("inconsistent involution parameters: {0}")]
    InvalidInvolution(String),
    #[error("invalid parabolic choice: {0}")]
    InvalidParabolic(String),
    #[error("involution does not stabilize the Levi root subsystem: {0}")]
    LeviNotStable(String),
    #[error("no positive system of the Levi is compatible with the involution")]
    NoCompatibleBorel,
    #[error("root {0} is fixed by the involution")]
    RootFixed(String),
    #[error("unexpected pairing value {value} for root {root}")]
    UnexpectedPairing { root: String, value: String },
    #[error("restricted Weyl group closure exceeded {0} elements")]
    WeylGroupTooLarge(usize),
    #[error("region is empty")]
    EmptyRegion,
    #[error("region is unbounded along direction {0}")]
    Unbounded(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degenerate cone: apex lies on the affine hull of facet {0}")]
    DegenerateCone(usize),
    #[error("facet index {0} out of range")]
    NoSuchFacet(usize),
    #[error("invalid polarization: {0}")]
    InvalidPolarization(String),
    #[error("lattice computation failed: {0}")]
    Lattice(String),
    #[error("no base point: the central slice of the moment polytope is empty")]
    NoBasePoint,
    #[error("zero denominator for ray {0}: the special function vanishes there")]
    ZeroDenominator(usize),
    #[error("linear form {form} is negative at a vertex of the region")]
    NegativeDensity { form: usize },
    #[error("assumption failed: {0}")]
    Assumption(String),
    #[error("polarization is not log-anticanonical: {0}")]
    NotAnticanonical(String),
    #[error("direction is not central: {0}")]
    NotCentral(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("numerical failure: {0}")]
    Numeric(String),
    #[error("configuration error at `{field}`: {message}")]
    Config { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, HoroError>;
