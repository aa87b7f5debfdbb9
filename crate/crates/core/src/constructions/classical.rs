use rayon::prelude::*;

use super::{check_cap, LambdaFunction};
use crate::error::{Error, Result};
use crate::fqla::{checked_pow, ExplicitCode, FqVector};
use crate::hamming::HammingCode;
use crate::verify::require_perfect;

fn require_binary(code: &ExplicitCode) -> Result<()> {
    if code.q() != 2 {
        return Err(Error::Unsupported(format!(
            "expected a binary code, got q = {}",
            code.q()
        )));
    }
    Ok(())
}

/// `{(u | u + v | p(u) + λ(v)) : u ∈ F_2^n, v ∈ C1}`, a binary 1-perfect code
/// of length `2n + 1`.
///
/// ```
/// use perfect_forge::constructions::{vasiliev, LambdaFunction, ENUMERATION_CAP};
/// use perfect_forge::fqla::{ExplicitCode, FqVector};
/// use perfect_forge::gf::Field;
///
/// let trivial = ExplicitCode::new(Field::prime(2).unwrap(), 1, vec![FqVector::zeros(1)]).unwrap();
/// let rep = vasiliev(&trivial, &LambdaFunction::Zero, ENUMERATION_CAP).unwrap();
/// assert_eq!(rep.len(), 2); // {000, 111}
/// let h7 = vasiliev(&rep, &LambdaFunction::Zero, ENUMERATION_CAP).unwrap();
/// assert_eq!((h7.n(), h7.len()), (7, 16));
/// ```
pub fn vasiliev(c1: &ExplicitCode, lambda: &LambdaFunction, cap: u128) -> Result<ExplicitCode> {
    require_binary(c1)?;
    require_perfect(c1)?;
    let f = c1.field();
    lambda.validate(f, c1.len())?;
    let n = c1.n();
    check_cap(
        "Vasil'ev output",
        checked_pow(2, n).and_then(|s| s.checked_mul(c1.len() as u128)),
        cap,
    )?;
    let words: Vec<FqVector> = (0..1u64 << n)
        .into_par_iter()
        .flat_map_iter(|ui| {
            let u = FqVector::from_rank_index(ui, 2, n);
            let pu = u.p_sum(f);
            c1.iter()
                .enumerate()
                .map(move |(k, v)| u.concat(&u.add(f, v)).push(f.add(pu, lambda.value(2, k))))
                .collect::<Vec<_>>()
        })
        .collect();
    ExplicitCode::new(f.clone(), 2 * n + 1, words)
}

/// The `n + 1` cosets of a binary Hamming code, indexed by syndrome: class 0
/// is the code, class `k` is the code shifted by `e_k`.
#[derive(Clone, Debug)]
pub struct CosetPartition {
    hamming: HammingCode,
    classes: Vec<ExplicitCode>,
}

impl CosetPartition {
    pub fn new(m: usize) -> Result<CosetPartition> {
        let hamming = HammingCode::build(2, m)?;
        let n = hamming.n();
        let mut buckets: Vec<Vec<FqVector>> = vec![Vec::new(); n + 1];
        for x in 0..1u64 << n {
            let u = FqVector::from_rank_index(x, 2, n);
            let k = phi_of(&hamming, &u)?;
            buckets[k].push(u);
        }
        let field = hamming.field().clone();
        let classes = buckets
            .into_iter()
            .map(|b| ExplicitCode::new(field.clone(), n, b))
            .collect::<Result<_>>()?;
        Ok(CosetPartition { hamming, classes })
    }

    pub fn n(&self) -> usize {
        self.hamming.n()
    }

    pub fn m(&self) -> usize {
        self.hamming.m()
    }

    pub fn hamming(&self) -> &HammingCode {
        &self.hamming
    }

    pub fn classes(&self) -> &[ExplicitCode] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &ExplicitCode {
        &self.classes[k]
    }

    /// Index of the class containing `u`.
    pub fn phi(&self, u: &FqVector) -> Result<usize> {
        phi_of(&self.hamming, u)
    }
}

fn phi_of(h: &HammingCode, u: &FqVector) -> Result<usize> {
    Ok(h.syndrome_decode(u)?.correction.map_or(0, |(i, _)| i))
}

/// `{(u | v | p(u)) : u ∈ F_2^n, v ∈ C²_{π(φ₁(u))}}`.
pub fn doubling(p1: &CosetPartition, p2: &CosetPartition, pi: &[usize], cap: u128) -> Result<ExplicitCode> {
    let n = p1.n();
    if p2.n() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: p2.n(),
        });
    }
    if pi.len() != n + 1 {
        return Err(Error::LengthMismatch {
            expected: n + 1,
            found: pi.len(),
        });
    }
    let mut seen = vec![false; n + 1];
    for &k in pi {
        if k > n || seen[k] {
            return Err(Error::NotABijection);
        }
        seen[k] = true;
    }
    let per_class = p2.class(0).len() as u128;
    check_cap(
        "doubling output",
        checked_pow(2, n).and_then(|s| s.checked_mul(per_class)),
        cap,
    )?;
    let f = p1.hamming.field();
    let words: Vec<FqVector> = (0..1u64 << n)
        .into_par_iter()
        .map(|ui| {
            let u = FqVector::from_rank_index(ui, 2, n);
            let class = p2.class(pi[p1.phi(&u)?]);
            let pu = u.p_sum(f);
            Ok(class.iter().map(|v| u.concat(v).push(pu)).collect::<Vec<_>>())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    ExplicitCode::new(f.clone(), 2 * n + 1, words)
}

/// `{(u_1 | … | u_{q-1} | v + Σ u_i | Σ α_i p(u_i) + λ(v))}` with `α_i` the
/// nonzero elements in index order; a q-ary 1-perfect code of length `qn + 1`.
pub fn lindstrom_schonheim(c1: &ExplicitCode, lambda: &LambdaFunction, cap: u128) -> Result<ExplicitCode> {
    require_perfect(c1)?;
    let f = c1.field();
    lambda.validate(f, c1.len())?;
    let (q, n) = (c1.q(), c1.n());
    let blocks = q as usize - 1;
    let prefixes = check_cap(
        "Lindstrom-Schonheim output",
        checked_pow(q, blocks * n).and_then(|s| s.checked_mul(c1.len() as u128)),
        cap,
    )? / c1.len().max(1);
    let words: Vec<FqVector> = (0..prefixes as u64)
        .into_par_iter()
        .flat_map_iter(|t| {
            let us = FqVector::from_rank_index(t, q, blocks * n);
            let mut sum = FqVector::zeros(n);
            let mut check = 0u8;
            for a in 0..blocks {
                let block: Vec<u8> = (a * n..(a + 1) * n).map(|j| us.get(j)).collect();
                let ua = FqVector::from_symbols(&block);
                sum = sum.add(f, &ua);
                check = f.add(check, f.mul(a as u8 + 1, ua.p_sum(f)));
            }
            c1.iter()
                .enumerate()
                .map(|(k, v)| us.concat(&v.add(f, &sum)).push(f.add(check, lambda.value(q, k))))
                .collect::<Vec<_>>()
        })
        .collect();
    ExplicitCode::new(f.clone(), q as usize * n + 1, words)
}
