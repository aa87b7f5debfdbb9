use crate::error::{Error, Result};
use crate::fqla::{checked_pow, ExplicitCode, FqVector};

use super::exact::PAIR_CAP;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Linearity {
    Linear,
    /// The zero word is missing.
    MissingZero,
    /// `a + alpha·b` is not a codeword.
    NotClosed {
        a: FqVector,
        b: FqVector,
        alpha: u8,
    },
}

impl Linearity {
    pub fn is_linear(&self) -> bool {
        matches!(self, Linearity::Linear)
    }
}

/// Decides whether `code` is a subspace.
///
/// A code holding 0 with exactly `q^rank` words equals its span. Otherwise the
/// first `(a, b, α)` in sorted order with `a + α·b ∉ C` is returned.
pub fn linearity_check(code: &ExplicitCode) -> Result<Linearity> {
    let n = code.n();
    if !code.contains(&FqVector::zeros(n)) {
        return Ok(Linearity::MissingZero);
    }
    let rank = code.to_matrix().rank();
    if checked_pow(code.q(), rank) == Some(code.len() as u128) {
        return Ok(Linearity::Linear);
    }
    let f = code.field();
    let len = code.len() as u128;
    let work = len * len * (code.q() as u128 - 1);
    if work > PAIR_CAP {
        return Err(Error::CapExceeded {
            what: "linearity scan",
            requested: work,
            cap: PAIR_CAP,
        });
    }
    for a in code.iter() {
        for b in code.iter() {
            for alpha in f.nonzero() {
                if !code.contains(&a.axpy(f, alpha, b)) {
                    return Ok(Linearity::NotClosed {
                        a: a.clone(),
                        b: b.clone(),
                        alpha,
                    });
                }
            }
        }
    }
    Err(Error::Consistency("code is closed but larger than its span".into()))
}
