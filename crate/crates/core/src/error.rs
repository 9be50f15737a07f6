//! Error type shared by every module of the crate.

use num_bigint::BigUint;
use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order n = {n} is not supported here (need n >= {min})")]
    Order { n: usize, min: usize },

    #[error("orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("rank {rank} is out of range for n = {n} (must be below {n}!)")]
    RankOutOfRange { n: usize, rank: BigUint },

    #[error("digit {index} has value {value}, outside Z_{radix}")]
    InvalidDigit { index: usize, value: u32, radix: usize },

    #[error("code for n = {n} must have {expected} digits, got {actual}")]
    DigitCount {
        n: usize,
        expected: usize,
        actual: usize,
    },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("orbit level k = {k} is out of range for n = {n} (need k <= {max})")]
    Level { n: usize, k: usize, max: usize },

    #[error("orbit index {beta} is out of range for a {k}-orbit of S_{n}")]
    OrbitIndex { n: usize, k: usize, beta: BigUint },

    #[error("the overlap digraph has no self-arcs")]
    SelfArc,

    #[error("rank {rank} is the last permutation of S_{n} and has no successor")]
    NoSuccessor { n: usize, rank: BigUint },

    #[error("{what} for n = {n} exceeds the cap n <= {cap}")]
    ResourceCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("the digraph is not strongly connected; no Hamiltonian path exists")]
    Disconnected,

    #[error("law violated: {0}")]
    LawViolation(String),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// `true` for failures caused by a resource cap rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
