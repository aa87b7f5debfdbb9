use std::sync::Arc;

use rayon::prelude::*;

use super::{check_cap, SigmaMap};
use crate::components::principal_basis;
use crate::error::{Error, Result};
use crate::fqla::{checked_pow, for_each_coset_word, ExplicitCode, FqVector};
use crate::hamming::HammingCode;
use crate::verify::require_perfect;

/// `⋃_c σ_c(R_i + (0 | c))` over the words `c` of a q-ary 1-perfect code of
/// length `n`, giving a 1-perfect code of length `qn + 1`.
///
/// `R_i` is the principal component of `H_{q,m+1}` with its columns arranged
/// so the last `n` coordinates form a hyperplane; `i` must lie off it, i.e.
/// `1 <= i <= (q-1)n + 1`. `σ_c` acts on coordinate `i`.
///
/// ```
/// use perfect_forge::constructions::{generalized_ls, SigmaMap, ENUMERATION_CAP};
/// use perfect_forge::hamming::HammingCode;
/// use perfect_forge::gf::FieldPermutation;
///
/// let h = HammingCode::build(2, 3).unwrap().codewords(1 << 10).unwrap();
/// let c = generalized_ls(&h, 3, &SigmaMap::Uniform(FieldPermutation::identity(2)), ENUMERATION_CAP).unwrap();
/// assert_eq!((c.n(), c.len()), (15, 2048));
/// ```
pub fn generalized_ls(c1: &ExplicitCode, i: usize, sigma: &SigmaMap, cap: u128) -> Result<ExplicitCode> {
    let m = require_perfect(c1)?;
    let (q, n) = (c1.q(), c1.n());
    let limit = (q as usize - 1) * n + 1;
    if i == 0 || i > limit {
        return Err(Error::Precondition(format!(
            "coordinate {i} must lie in 1..={limit}, off the hyperplane"
        )));
    }
    sigma.validate(q, c1.len())?;
    let h = Arc::new(HammingCode::with_hyperplane_last(c1.field().clone(), m + 1)?);
    let r = principal_basis(&h, i)?;
    check_cap(
        "generalized Lindstrom-Schonheim output",
        checked_pow(q, r.dim()).and_then(|s| s.checked_mul(c1.len() as u128)),
        cap,
    )?;
    let pad = FqVector::zeros(limit);
    let words: Vec<FqVector> = c1
        .words()
        .par_iter()
        .enumerate()
        .flat_map_iter(|(k, c)| {
            let s = sigma.permutation(q, k);
            let mut out = Vec::new();
            for_each_coset_word(r.basis(), &pad.concat(c), |w| out.push(w.permute_at(i, &s)));
            out
        })
        .collect();
    ExplicitCode::new(c1.field().clone(), h.n(), words)
}
