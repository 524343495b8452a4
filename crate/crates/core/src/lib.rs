//! Finite type invariants of Gauss words.
//!
//! The crate builds the generators and relations of the truncated Polyak
//! group `H_n`, reduces the relation matrix to Smith normal form over
//! `Z/2^(n-1)`, and turns the row transformation into an explicit universal
//! invariant that is evaluated by counting subwords. On top of that sit
//! homotopy move search and a classifier for words of small rank.
//!
//! The elimination engine is generic over the machine word holding residues
//! (see [`ring::Word`]) and the oracle SNF over any signed integer type; the
//! aliases below fix the common choices.

pub mod classify;
pub mod error;
pub mod gaussword;
pub mod homotopy;
pub mod invariant;
pub mod presentation;
pub mod ring;
pub mod smith;

pub use error::{PresentationError, SmithError, TableError, WordError};
pub use gaussword::GaussWord;
pub use invariant::{InvariantTable, LinearCombination, Value};
pub use presentation::{GeneratorTable, Presentation, RelationVector};
pub use smith::{SmithResult, SparseMatrix, UStrategy};

/// `Z/2^k` on bytes; enough for every degree up to 9.
pub type Ring8 = ring::Mod2k<u8>;
pub type Ring16 = ring::Mod2k<u16>;
pub type Ring32 = ring::Mod2k<u32>;
pub type Ring64 = ring::Mod2k<u64>;

pub type SmithResult8 = SmithResult<u8>;
pub type SmithResult16 = SmithResult<u16>;
pub type SmithResult64 = SmithResult<u64>;

pub type RowOpLog8 = smith::RowOpLog<u8>;
pub type RowOpLog64 = smith::RowOpLog<u64>;

/// Dense integer matrices for the oracle SNF.
pub type IntMatrix<T> = Vec<Vec<T>>;
pub type IntMatrix64 = IntMatrix<i64>;
pub type IntMatrix128 = IntMatrix<i128>;
pub type BigIntMatrix = IntMatrix<num_bigint::BigInt>;
