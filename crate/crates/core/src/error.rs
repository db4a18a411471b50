use thiserror::Error;

use crate::zeta::IntPolynomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty word: the Basilica action needs at least one letter")]
    EmptyWord,

    #[error("invalid letter {0:?} in word (expected '0' or '1')")]
    InvalidLetter(char),

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("level {level} outside the configured range 1..={cap}")]
    LevelOutOfRange { level: usize, cap: usize },

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),

    #[error("vertex {vertex:?} has no port {port:?}")]
    UnknownPort { vertex: String, port: String },

    #[error("half-edge ({vertex}, {port}) is paired twice")]
    HalfEdgeReused { vertex: String, port: String },

    #[error("half-edge ({vertex}, {port}) is left unpaired")]
    HalfEdgeUnpaired { vertex: String, port: String },

    #[error("vertex order covers {got} of {expected} vertices or repeats a vertex")]
    IncompleteOrder { got: usize, expected: usize },

    #[error("vertex map is not a bijection: {0}")]
    NotBijective(String),

    #[error("product operands are incompatible: {0}")]
    ProductMismatch(String),

    #[error("malformed cover: {0}")]
    MalformedCover(String),

    #[error("lift of base edge {edge} is not a perfect matching between fibers")]
    MalformedLift { edge: String },

    #[error("permutations act on different point sets ({0} vs {1})")]
    PermutationSizeMismatch(usize, usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeded the cap of {cap} elements")]
    GroupCapExceeded { cap: usize },

    #[error("cover is not normal")]
    NotNormal,

    #[error("sheet labeling is not a group labeling: {0}")]
    NotGroupLabeling(String),

    #[error("invalid group or character: {0}")]
    InvalidCharacter(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("vertex {0:?} has degree below 2")]
    DegreeTooSmall(String),

    #[error("matrix is not square or dimensions disagree: {0}")]
    Dimension(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is not exactly divisible (remainder {remainder})")]
    NotDivisible { remainder: IntPolynomial },

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
