use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid algebraic field: {0}")]
    InvalidField(String),
    #[error("scalars from two different algebraic fields cannot be mixed")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("configuration is not balanced and odd: {0}")]
    NotBalancedOdd(String),
    #[error("degenerate point configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("limiting torus case (n = 2m+1): the dual vector configuration is empty")]
    TorusCase,
    #[error("quasilattice is dense, not a lattice")]
    NotALattice,
    #[error("vector is not a member of the lattice")]
    NotAMember,
    #[error("fan has not been validated")]
    NotValidated,
    #[error("shelling search cap of {0} maximal simplices exceeded")]
    CapExceeded(usize),
    #[error("index set has wrong cardinality: expected {expected}, got {got}")]
    WrongCardinality { expected: usize, got: usize },
    #[error("cardinality mismatch between triangulation and chamber: {0}")]
    CardinalityMismatch(String),
    #[error("not a virtual chamber: {0}")]
    NotAVirtualChamber(String),
    #[error("polytope is unbounded in direction {0:?}")]
    Unbounded(String),
    #[error("polytope is not full-dimensional")]
    NotFullDimensional,
    #[error("polytope is not simple at vertex {0}")]
    NotSimple(String),
    #[error("polytopality oracles disagree: {0}")]
    OracleDisagreement(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
