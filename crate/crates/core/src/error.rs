use thiserror::Error;

/// Errors raised by graph construction, verification and I/O.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("dart {dart} out of range (graph has {m} darts)")]
    DartOutOfRange { dart: usize, m: usize },

    #[error("pairing is not an involution at dart {dart}")]
    NotInvolution { dart: usize },

    #[error("graph is not regular of degree {expected}")]
    NotRegular { expected: usize },

    #[error("graph must be simple: {0}")]
    NotSimple(&'static str),

    #[error("odd degree {degree} at vertex {vertex}")]
    OddDegree { vertex: usize, degree: usize },

    #[error("semi-edge at dart {dart} not allowed here")]
    SemiEdgePresent { dart: usize },

    #[error("dart set is not a 1-factor: {0}")]
    NotOneFactor(String),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("bipartite multigraph is not regular: {0}")]
    NotBipartiteRegular(String),

    #[error("invalid cover certificate: {0}")]
    InvalidCertificate(String),

    #[error("cover certificate does not verify: {0}")]
    CoverRejected(String),

    #[error("covering map does not verify: {0}")]
    CoveringRejected(String),

    #[error("graph too large for exhaustive search ({n} > {max} vertices)")]
    TooLarge { n: usize, max: usize },

    #[error("degree or factorization signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}
