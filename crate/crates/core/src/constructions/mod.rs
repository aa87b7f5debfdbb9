//! Perfect-code constructions.
//!
//! Recursive constructions ([`vasiliev`], [`doubling`],
//! [`lindstrom_schonheim`], [`generalized_ls`]) produce explicit codes and
//! refuse outputs above an enumeration cap. Switching a family of shifted
//! principal components of a Hamming code produces an
//! [`ImplicitSwitchedCode`], which answers membership queries without
//! listing its words.

mod assign;
mod classical;
mod fullrank;
mod gls;
mod switching;

pub use assign::{LambdaFunction, SigmaMap};
pub use classical::{doubling, lindstrom_schonheim, vasiliev, CosetPartition};
pub use fullrank::{fullrank_code, fullrank_vectors, switched_vectors, xi_map, Variant};
pub use gls::generalized_ls;
pub use switching::{
    implicit_enumerate, implicit_membership, read_switched, switch_family_explicit, write_switched,
    ImplicitSwitchedCode, SwitchPart, SwitchedPart, SWITCHED_MAGIC,
};

/// Default limit on the number of words any construction will list.
pub const ENUMERATION_CAP: u128 = 1 << 26;

pub(crate) fn check_cap(what: &'static str, requested: Option<u128>, cap: u128) -> crate::Result<usize> {
    match requested {
        Some(r) if r <= cap => Ok(r as usize),
        _ => Err(crate::Error::CapExceeded {
            what,
            requested: requested.unwrap_or(u128::MAX),
            cap,
        }),
    }
}
