use thiserror::Error;

/// Errors reported by the exact-arithmetic toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vector, form or matrix does not match the ambient rank.
    #[error("dimension mismatch: expected rank {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A basis-change matrix whose determinant is not +1 or -1.
    #[error("matrix is not unimodular (determinant {det})")]
    NotUnimodular { det: String },

    /// An operation restricted to the spin classification received a
    /// non-spin tuple.
    #[error("non-spin tuple")]
    NonSpinTuple,

    /// The brute-force admissibility oracle is guarded against exponential
    /// blowup.
    #[error("rank {rank} exceeds the brute-force bound {max}")]
    RankTooLarge { rank: usize, max: usize },

    /// `b3` of a simply connected 6-manifold must be even.
    #[error("b3 = {b3} is odd")]
    OddB3 { b3: u64 },

    /// A spin tuple was paired with a first Chern class that has an odd
    /// coordinate.
    #[error("c1 has an odd coordinate but the tuple is spin")]
    OddChernClass,

    /// `F(c1) - p1(c1)` is odd, so no complex structure with this `c1` is
    /// consistent with the tuple.
    #[error("Chern parity failure: F(c1) - p1(c1) = {value} is odd")]
    ChernParity { value: String },

    /// A rank-2 vanishing-line search received the zero form; every line
    /// vanishes on it.
    #[error("cubic form is identically zero: all lines vanish")]
    IdenticallyZeroForm,

    /// The proposed class does not split the lattice as a point blow-up.
    #[error("not a blow-down class: {0}")]
    NotABlowDownClass(String),

    /// A construction parameter is out of its domain.
    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    /// A generic precondition violation (documented per operation).
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
