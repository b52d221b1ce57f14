//! Error types, one enum per module.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("no inverse: element is zero mod {ell}")]
    ZeroInverse { ell: u32 },
    #[error("residue ring exponent must be >= 1")]
    ZeroExponent,
    #[error("modulus {ell}^{r} does not fit below 2^31")]
    ModulusOverflow { ell: u32, r: u32 },
    #[error("{value} is not {ell}-integral")]
    NotLocal { value: String, ell: u32 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix dimensions mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field modulus {0} too large for dense elimination")]
    ModulusTooLarge(u32),
    #[error("lattice is not of full rank; coset space is infinite")]
    NotFullRank,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("chain references unknown edge {0}")]
    UnknownEdge(usize),
    #[error("chain touches colorless edge {0}")]
    ColorlessEdgeInChain(usize),
    #[error("no weight supplied for edge {0}")]
    MissingWeight(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("unknown color label {0:?}")]
    UnknownColor(String),
    #[error("invalid morphism: {0}")]
    BadMorphism(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatroidError {
    #[error("matrix is not totally unimodular: rows {rows:?} x cols {cols:?} has determinant {det}")]
    NotTU {
        rows: Vec<usize>,
        cols: Vec<usize>,
        det: i64,
    },
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("element {0:?} is a loop")]
    LoopElement(String),
    #[error("cannot contract loop {0:?}")]
    LoopContraction(String),
    #[error("ground set of size {n} exceeds the limit {limit}")]
    GroundSetTooLarge { n: usize, limit: usize },
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("unknown ground label {0:?}")]
    UnknownLabel(String),
    #[error("invalid matroid data: {0}")]
    InvalidMatroid(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlbaneseError {
    #[error("albanese graph would have {edges} edges, over the limit {limit}")]
    TooLarge { edges: u128, limit: u64 },
    #[error("invalid parameters: j = {j} exceeds r = {r}")]
    InvalidParams { r: u32, j: u32 },
    #[error("reduction requires parameters (ell, r, j) = (2, 1, 0), got ({ell}, {r}, {j})")]
    WrongParams { ell: u32, r: u32, j: u32 },
    #[error("color profile of a cycle lies outside the lattice: {profile:?}")]
    HypothesisFails { profile: Vec<i64> },
    #[error("host graph is not connected")]
    Disconnected,
    #[error("graph colors do not match the matroid ground set")]
    ColorMismatch,
    #[error("source and target refinement parameters disagree")]
    InconsistentParams,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ring(#[from] RingError),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("host graph colors do not match the matroid ground set")]
    ColorMismatch,
    #[error("profile image of dimension {dim} too large to enumerate")]
    ImageTooLarge { dim: usize },
    #[error("edge {0} restricts to a functional that is not a multiple of its color form")]
    NotMultiple(usize),
    #[error("color {0:?} vanishes on the embedded lattice; weights are undefined")]
    DivisionUndefined(String),
    #[error("invalid splitting witness: {0}")]
    InvalidWitness(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("solution chains not supported on the embedded minor subgraph")]
    NotSupportedOnSubgraph,
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Albanese(#[from] AlbaneseError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ring(#[from] RingError),
}
