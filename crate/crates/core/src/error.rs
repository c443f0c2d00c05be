use std::fmt;

use thiserror::Error;

/// A DSL syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {0}")]
    Parse(#[from] ParseError),
    #[error("duplicate op `{0}`")]
    DuplicateOp(String),
    #[error("arity mismatch: op `{op}` takes {expected} argument(s), got {found}")]
    ArityMismatch { op: String, expected: usize, found: usize },
    #[error("unknown op `{0}`")]
    UnknownOp(String),
    #[error("variable x{index} is outside context {context}")]
    VarOutOfContext { index: usize, context: usize },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("op `{0}` has no assignment")]
    MissingAssignment(String),
    #[error("target theory `{0}` has no backend attached")]
    NoBackend(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("empty carrier not allowed: the signature has constants")]
    EmptyCarrierWithConstants,
    #[error("capability-unsupported: {backend} has no {what}")]
    CapabilityUnsupported { backend: String, what: String },
    #[error("hom mismatch: {0}")]
    HomMismatch(String),
    #[error("element not in domain: {0}")]
    ElementNotInDomain(String),
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),
    #[error("ring-mismatch")]
    RingMismatch,
    #[error("not a ring hom: {0}")]
    NotRingHom(String),
    #[error("axiom violated: {0}")]
    AxiomViolation(String),
    #[error("backend {0} is not commutative")]
    NonCommutative(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("non-canonical input: {0}")]
    NonCanonical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
