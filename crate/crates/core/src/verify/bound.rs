use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hamming::hamming_exponent;

/// Largest decimal expansion, in digits, that is rendered.
const MAX_DIGITS: f64 = 1e4;

/// Lower bound `(q!)^(q^e)` on the number of distinct 1-perfect codes of
/// length `n`, with `e = (n-1)/q - m' - 1` and `m'` the parameter of the
/// inner length `(n-1)/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountingBound {
    pub q: u32,
    pub n: usize,
    pub inner_length: usize,
    pub inner_m: usize,
    /// `q!`.
    pub base: u64,
    /// `e`; the bound is vacuous when negative.
    pub exponent: i64,
    /// `q^e` in decimal, when `e >= 0`.
    pub power: Option<String>,
    /// `(q!)^(q^e)` in decimal, when it has at most 10⁴ digits.
    pub decimal: Option<String>,
}

impl CountingBound {
    pub fn vacuous(&self) -> bool {
        self.exponent < 0
    }
}

pub fn lower_bound_count(q: u32, n: usize) -> Result<CountingBound> {
    if !(2..=16).contains(&q) {
        return Err(Error::UnsupportedOrder { p: q, k: 1 });
    }
    let m = hamming_exponent(q, n)
        .filter(|&m| m >= 2)
        .ok_or_else(|| Error::Precondition(format!("{n} is not a Hamming length over GF({q}) with m >= 2")))?;
    let inner_length = (n - 1) / q as usize;
    let inner_m = m - 1;
    let exponent = inner_length as i64 - inner_m as i64 - 1;
    let base: u64 = (1..=q as u64).product();
    let (power, decimal) = if exponent < 0 {
        (None, None)
    } else {
        let e = exponent as u32;
        let digits = (q as f64).powi(e as i32) * (base as f64).log10();
        let power = (exponent < 4096).then(|| BigUint::from(q).pow(e));
        let decimal = match &power {
            Some(p) if digits <= MAX_DIGITS => {
                let p = u32::try_from(p).expect("small exponent");
                Some(BigUint::from(base).pow(p).to_string())
            }
            _ => None,
        };
        (power.map(|p| p.to_string()), decimal)
    };
    Ok(CountingBound {
        q,
        n,
        inner_length,
        inner_m,
        base,
        exponent,
        power,
        decimal,
    })
}
