use thiserror::Error;

use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

/// Partial progress reported when a search runs out of budget.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size out of range: {0}")]
    SizeOutOfRange(String),

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("graph has {n} vertices; bitset kernels support at most {max}")]
    TooLarge { n: usize, max: usize },

    #[error("search budget of {budget} nodes exhausted in {what}")]
    ResourceLimit {
        what: &'static str,
        budget: u64,
        partial: Box<PartialBounds>,
    },

    #[error("graph is not connected")]
    NotConnected,

    #[error("not found: {0}")]
    NotFound(String),

    #[error("hypothesis violated at vertex {vertex}: {reason}")]
    HypothesisViolation { vertex: usize, reason: String },

    #[error("graph is not vertex-transitive")]
    NotVertexTransitive,

    #[error("{{{u}, {v}}} is not a two-vertex separator")]
    NotASeparator { u: usize, v: usize },

    #[error("parse error at line {line}, byte {offset}: {message}")]
    Parse {
        line: usize,
        offset: usize,
        message: String,
    },

    #[error("input rejected: {0}")]
    InputViolation(String),

    #[error("{stage}: {message}")]
    Stage { stage: &'static str, message: String },

    #[error("vertex {vertex}: no pairing of its neighbourhood avoids the forbidden patterns ({detail})")]
    NoValidSelection { vertex: usize, detail: String },

    #[error("colour class {class} is invalid: {reason}")]
    ClassInvalid { class: usize, reason: String },

    #[error("class graph of colour class {class} is not 4-colourable (critical subgraph on {critical:?}, low-vertex Gallai forest: {gallai_forest})")]
    NotFourColorable {
        class: usize,
        critical: Vec<usize>,
        gallai_forest: bool,
    },

    #[error("vertex {vertex} fits no colour class: every proper 4-colouring of G - {vertex} shows at least three colours on its neighbourhood")]
    NoFeasibleClass { vertex: usize },

    #[error("assembly conflict: {0}")]
    AssemblyConflict(String),

    #[error("input rejected: {reason} (witness {witness:?})")]
    Rejected { reason: String, witness: Vec<usize> },

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn budget(what: &'static str, budget: u64) -> Self {
        Error::ResourceLimit {
            what,
            budget,
            partial: Box::default(),
        }
    }

    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
