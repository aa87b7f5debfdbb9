//! Words, matrices and explicit codes over GF(q).
//!
//! Coordinates exposed by the API are 1-based; storage is 0-based.

mod code;
pub mod io;
mod matrix;
mod vector;

pub(crate) use code::checked_pow;
pub use code::{coset_words, for_each_coset_word, ExplicitCode};
pub use matrix::{FqMatrix, RowSpace, Rref};
pub use vector::{vec_stats, FqVector, VecStats};
