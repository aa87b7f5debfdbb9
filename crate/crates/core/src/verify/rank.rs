use serde::Serialize;

use crate::constructions::{switched_vectors, ImplicitSwitchedCode};
use crate::error::{Error, Result};
use crate::fqla::{ExplicitCode, FqMatrix, FqVector, RowSpace};
use crate::gf::Field;
use crate::rng::SplitMix64;

/// Maximum number of Hamming codewords drawn while collecting witnesses.
pub const SAMPLING_BUDGET: u64 = 1_000_000;

/// Why a witness belongs to the code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MembershipProof {
    /// Taken from the word list of an explicit code.
    Listed,
    /// A Hamming codeword lying in no removed coset.
    HammingOutsideFamily,
    /// `σ_s` applied to `rep_s + Σ coefficients · basis_s`.
    SwitchedCoset { part: usize, coefficients: Vec<u8> },
}

/// Codewords whose span has dimension `rank`, each with a membership proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub witnesses: Vec<FqVector>,
    pub proofs: Vec<MembershipProof>,
}

impl RankCertificate {
    pub fn is_full(&self, n: usize) -> bool {
        self.rank == n
    }

    /// Recomputes the rank of the witnesses from scratch.
    pub fn recompute_rank(&self, field: &Field, n: usize) -> Result<usize> {
        Ok(FqMatrix::from_rows(field.clone(), n, &self.witnesses)?.rank())
    }
}

/// A maximal independent set of codewords, chosen greedily in sorted order.
pub fn rank_certificate_explicit(code: &ExplicitCode) -> RankCertificate {
    let mut span = RowSpace::new(code.field().clone(), code.n());
    let mut witnesses = Vec::new();
    for w in code.iter() {
        if span.dim() == code.n() {
            break;
        }
        if span.insert(w) {
            witnesses.push(w.clone());
        }
    }
    RankCertificate {
        rank: witnesses.len(),
        proofs: vec![MembershipProof::Listed; witnesses.len()],
        witnesses,
    }
}

/// Rank certificate for a switched code without listing it.
///
/// Random Hamming codewords outside every removed coset are drawn until
/// `n - m` of them are independent; the switched shift vectors `c_s(i_s, σ_s)`
/// are then added. Every witness is re-checked with the membership test.
pub fn rank_certificate_implicit(code: &ImplicitSwitchedCode, seed: u64) -> Result<RankCertificate> {
    let base = code.base();
    let (q, n) = (code.q(), code.n());
    let f = base.field();
    let target = base.dimension();
    let generator = base.generator();
    let mut rng = SplitMix64::new(seed);
    let mut span = RowSpace::new(f.clone(), n);
    let mut witnesses = Vec::new();
    let mut proofs = Vec::new();
    let mut draws = 0u64;
    while span.dim() < target {
        if draws == SAMPLING_BUDGET {
            return Err(Error::BudgetExhausted(SAMPLING_BUDGET));
        }
        draws += 1;
        let coeffs: Vec<u8> = (0..generator.rows()).map(|_| rng.below(q as u64) as u8).collect();
        let w = generator.combine(&coeffs);
        if code.parts().iter().any(|p| p.component.contains(&w)) {
            continue;
        }
        if span.insert(&w) {
            witnesses.push(w);
            proofs.push(MembershipProof::HammingOutsideFamily);
        }
    }
    for (s, v) in switched_vectors(code).into_iter().enumerate() {
        let part = &code.parts()[s];
        let c = &part.component;
        let mut pre = v.clone();
        pre.set(
            c.coordinate() - 1,
            part.sigma.inverse().apply(v.get(c.coordinate() - 1)),
        );
        let offset = pre.sub(f, c.representative());
        let coefficients = c
            .basis()
            .in_span(&offset)?
            .ok_or_else(|| Error::Consistency(format!("switched vector {} is outside its coset", s + 1)))?;
        span.insert(&v);
        witnesses.push(v);
        proofs.push(MembershipProof::SwitchedCoset { part: s, coefficients });
    }
    for (k, w) in witnesses.iter().enumerate() {
        if !code.contains(w)? {
            return Err(Error::Consistency(format!("witness {k} is not a codeword")));
        }
    }
    Ok(RankCertificate {
        rank: span.dim(),
        witnesses,
        proofs,
    })
}
