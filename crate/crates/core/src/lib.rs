//! Ranking, unranking and structure of the permutations generated by
//! cyclic shift.
//!
//! Every permutation of `n` symbols is reached from `(1)` by inserting the
//! symbols `2, 3, ..., n` one at a time at the right end and rotating left.
//! The rotation exponents, read as digits of a mixed-radix number, are the
//! rank of the permutation in generation order. This crate provides:
//!
//! * [`radix`]: the number system itself and its ring arithmetic;
//! * [`perm`]: permutations and the insertion/rotation primitives;
//! * [`codec`]: rank <-> permutation and streaming generation;
//! * [`orbits`]: the nested block structure of the generation order;
//! * [`symmetry`]: mirror ranks, transition weights and the ruler sequence;
//! * [`overlap`]: the weighted overlap digraph, its canonical Hamiltonian
//!   path and an exact minimum-weight path search;
//! * [`verify`]: an aggregate runner for all of the above laws.
//!
//! The `book/` directory at the repository root walks through the same
//! material with runnable examples.

pub mod codec;
pub mod error;
pub mod orbits;
pub mod overlap;
pub mod perm;
pub mod radix;
pub mod symmetry;
pub mod verify;

pub use codec::{generate_all, oracle_generate, perm_to_rank, rank_to_perm, RankedPermutation};
pub use error::{Error, Result};
pub use perm::{Permutation, Position, Word};
pub use radix::{PiBase, PiNumber};

pub(crate) fn serialize_decimal<S: serde::Serializer>(
    value: &num_bigint::BigUint,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

// The guide's code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/number-system.md")]
    mod number_system {}
    #[doc = include_str!("../../../book/src/codec.md")]
    mod codec {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/symmetry.md")]
    mod symmetry {}
    #[doc = include_str!("../../../book/src/overlap.md")]
    mod overlap {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
