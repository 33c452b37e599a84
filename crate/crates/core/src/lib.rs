//! Lower-triangular Toeplitz superregular matrices over odd prime fields.
//!
//! A lower-triangular matrix is superregular when every minor that is not
//! forced to vanish by the triangular support is nonzero. Such matrices,
//! in Toeplitz form, are the key ingredient for convolutional codes with
//! optimal column distance, and the interesting question is how small the
//! field can be for a given order.
//!
//! The crate provides:
//!
//! - [`prime_field`]: exact arithmetic in F_p (inverses, Legendre symbols,
//!   modular square roots, rational literals).
//! - [`toeplitz`]: the matrix type, minor enumeration, exact determinants
//!   and the superregularity checkers.
//! - [`symbolic`]: exact-integer multivariate polynomials, symbolic minors
//!   of the generic Toeplitz matrix, and the census of minors that depend
//!   on the last entry.
//! - [`forbidden`]: for a fixed column prefix, the set of values of the
//!   next entry that kill some minor, with per-minor provenance.
//! - [`constructions`]: closed-form families for orders 3..=6 and embedded
//!   witness tables for orders 7..=10.
//! - [`search`]: greedy extension, pruned exhaustive search, minimum field
//!   and minimum forbidden-set scans, and randomized prefix search.

pub mod constructions;
mod error;
pub mod forbidden;
pub(crate) mod minor_classes;
pub mod prime_field;
pub mod search;
pub mod symbolic;
pub mod toeplitz;

pub use error::{Error, Result};
pub use prime_field::{FieldElement, PrimeField};
pub use toeplitz::{MinorIndex, SuperregularityReport, ToeplitzLT};
