//! Computations with regular matroids and their Albanese graphs.
//!
//! A regular matroid is carried here by a totally unimodular integer
//! realization matrix. From a realization this crate builds the family of
//! S-colored Albanese graphs, assembles the per-level solution systems
//! over prime fields, decides indivisibility of solutions, verifies
//! quadratic splittings in colored graphs, and runs the splitting →
//! solution → reduction → minor pipelines end to end.
//!
//! Everything is exact: prime-field elimination (bit-packed over F2),
//! arbitrary-precision integers for lattice normal forms, and exact
//! rationals wherever locality at a prime matters.

pub mod albanese;
pub mod error;
pub mod graph;
pub mod linalg;
pub mod matroid;
pub mod ring;
pub mod solver;

pub use error::{AlbaneseError, GraphError, LinalgError, MatroidError, RingError, SolverError};

/// Exact integer matrix (arbitrary precision).
pub type IntMatrix = linalg::Matrix<num_bigint::BigInt>;
/// Exact rational matrix.
pub type RatMatrix = linalg::Matrix<num_rational::BigRational>;
/// Integer chain, the default coefficient choice for solution chains.
pub type IntChain = graph::Chain1<i64>;
/// Rational chain, used by splitting witnesses.
pub type RatChain = graph::Chain1<num_rational::BigRational>;
