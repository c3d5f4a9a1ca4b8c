use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("not a permutation of 1..={n}: {detail}")]
    InvalidPermutation { n: usize, detail: String },

    #[error("invalid exponent vector: {0}")]
    InvalidExponents(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("malformed transposition word: {0}")]
    MalformedWord(String),

    #[error("invalid gluing: {0}")]
    InvalidGluing(String),

    #[error("input is not connected")]
    Disconnected,

    #[error("ribbon graph is not in the valence >= 3 class: {0}")]
    InvalidRibbonGraph(String),

    #[error("map is not in the image of the collapse: {0}")]
    NotInImage(ImageViolation),

    #[error("zero denominator in ratio")]
    ZeroDenominator,

    #[error("argument {value} outside validated range [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("quadrature did not converge: estimate {estimate:e}, error {error:e} after {subdivisions} subdivisions")]
    NoConvergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },

    #[error("eigensolver failed to converge")]
    EigenNoConvergence,

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Which of the image conditions a map violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ImageViolation {
    /// Some vertex is neither left nor right.
    VertexNeitherLeftNorRight { vertex: usize },
    /// A marked vertex is not an interior right vertex.
    MarkedVertexNotInteriorRight { polygon: usize },
    /// Two left vertices are joined by an edge.
    AdjacentLeftVertices { a: usize, b: usize },
}

impl std::fmt::Display for ImageViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ImageViolation::VertexNeitherLeftNorRight { vertex } => {
                write!(f, "vertex {vertex} is neither left nor right")
            }
            ImageViolation::MarkedVertexNotInteriorRight { polygon } => {
                write!(f, "marked vertex of polygon {polygon} is not an interior right vertex")
            }
            ImageViolation::AdjacentLeftVertices { a, b } => {
                write!(f, "left vertices {a} and {b} are at distance < 2")
            }
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
