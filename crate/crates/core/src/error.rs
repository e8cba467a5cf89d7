use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("site {site} is out of range for a {n_sites}-site chain")]
    SiteOutOfRange { site: usize, n_sites: usize },

    #[error("non-finite coefficient {0}")]
    NonFiniteCoefficient(f64),

    #[error("invalid term: {0}")]
    InvalidTerm(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "{n_sites} sites exceeds the dense cap of {cap} sites; \
         XX/YY/Z chains can be solved with the free-fermion solver"
    )]
    DenseCapExceeded { n_sites: usize, cap: usize },

    #[error("eigensolver did not converge: {0}")]
    Eigensolver(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("operator is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("expectation value has imaginary part {0:e}")]
    ComplexExpectation(f64),

    #[error("mediator ground state is degenerate (gap {gap:e})")]
    DegenerateMediator { gap: f64 },

    #[error("partition does not match the interaction terms: {0}")]
    PartitionMismatch(String),

    #[error(
        "classical-split search over {free} probe-free terms exceeds the cap of {cap}; \
         supply a partition and use verify instead"
    )]
    SearchSpaceExceeded {
        free: usize,
        cap: usize,
        /// Terms that were forced onto each side before the search was abandoned.
        forced_a: Vec<usize>,
        forced_b: Vec<usize>,
    },

    #[error("term `{term}` is not an XX/YY bond or z field; use the exact solver")]
    NotQuadratic { term: String },

    #[error("zero mode with single-particle energy {energy:e}; ground state is degenerate")]
    ZeroMode { energy: f64 },

    #[error("Pfaffian of an odd-dimensional ({0}x{0}) matrix")]
    OddDimension(usize),

    #[error("matrix is not antisymmetric (max deviation {0:e})")]
    NotAntisymmetric(f64),

    #[error("log-log fit needs positive data; got {value} at index {index}")]
    NonPositiveData { index: usize, value: f64 },

    #[error("fit needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
