//! Construction and verification of q-ary 1-perfect codes.
//!
//! The crate builds Hamming codes over fields of order up to 16 together with
//! the projective geometry of their parity-check columns, the classical
//! recursive constructions of perfect codes, and switched codes obtained by
//! replacing cosets of principal i-components with permuted copies. Every
//! construction can be checked: exactly by marking radius-1 balls when the
//! ambient space is small, and by targeted sampling plus rank certificates
//! when it is not.

pub mod components;
pub mod constructions;
pub mod error;
pub mod fqla;
pub mod gf;
pub mod hamming;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
