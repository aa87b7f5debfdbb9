use std::sync::Arc;

use super::report::{Check, ReportKind, VerificationReport};
use crate::components::principal_basis;
use crate::error::{Error, Result};
use crate::fqla::{checked_pow, for_each_coset_word, FqVector, RowSpace};
use crate::hamming::HammingCode;
use crate::rng::SplitMix64;

/// Largest ambient space `q^n` whose cosets are scanned word by word.
const EXHAUSTIVE_CAP: u128 = 1 << 12;

/// Checks that every coset `R_i + u` with `u` supported on the hyperplane
/// `{j : w · h_j = 0}` meets the vectors supported there in `u` alone.
///
/// The exact form of the claim, `R_i ∩ F_q^n(x) = {0}`, is decided by a rank
/// computation. When `q^n <= 4096` every coset is also scanned word by word;
/// otherwise `trials` random pairs `(u, r)` are drawn.
pub fn lemma1_check(code: &Arc<HammingCode>, i: usize, w: &[u8], trials: u64, seed: u64) -> Result<VerificationReport> {
    let hyperplane = code.order().hyperplane_points(w)?;
    if hyperplane.contains(&i) {
        return Err(Error::Precondition(format!("coordinate {i} lies on the hyperplane")));
    }
    let r = principal_basis(code, i)?;
    let (q, n) = (code.q(), code.n());
    let f = code.field();
    let on_plane = |v: &FqVector| v.support().iter().all(|j| hyperplane.binary_search(j).is_ok());

    let mut joint = r.span().clone();
    let independent = hyperplane
        .iter()
        .filter(|&&j| joint.insert(&FqVector::unit(n, j - 1, 1)))
        .count();
    let rank = Check::new(
        "trivial-intersection",
        independent == hyperplane.len(),
        format!(
            "dim R_{i} = {}, {} hyperplane coordinates, joint rank {}",
            r.dim(),
            hyperplane.len(),
            joint.dim()
        ),
        None,
    );

    let mut plane_basis = RowSpace::new(f.clone(), n);
    for &j in &hyperplane {
        plane_basis.insert(&FqVector::unit(n, j - 1, 1));
    }
    let work = checked_pow(q, n);
    let (kind, coset) = if work.is_some_and(|s| s <= EXHAUSTIVE_CAP) {
        let mut bad: Option<(FqVector, usize)> = None;
        let mut cosets = 0u64;
        for_each_coset_word(&plane_basis.basis(), &FqVector::zeros(n), |u| {
            cosets += 1;
            let mut hits = 0;
            for_each_coset_word(r.basis(), u, |x| hits += on_plane(x) as usize);
            if hits != 1 && bad.is_none() {
                bad = Some((u.clone(), hits));
            }
        });
        let check = match bad {
            None => Check::new(
                "single-meeting",
                true,
                format!("all {cosets} cosets meet the hyperplane vectors once"),
                None,
            ),
            Some((u, hits)) => Check::new(
                "single-meeting",
                false,
                format!("coset meets the hyperplane vectors {hits} times"),
                Some(u.to_string()),
            ),
        };
        (ReportKind::Exact, check)
    } else {
        let mut bad = None;
        for t in 0..trials {
            let mut rng = SplitMix64::substream(seed, t);
            let mut u = FqVector::zeros(n);
            for &j in &hyperplane {
                u.set(j - 1, rng.below(q as u64) as u8);
            }
            let coeffs: Vec<u8> = (0..r.dim()).map(|_| rng.below(q as u64) as u8).collect();
            let rv = r.basis().combine(&coeffs);
            let x = rv.add(f, &u);
            if !rv.is_zero() && on_plane(&x) {
                bad = Some((t, x));
                break;
            }
        }
        let check = match bad {
            None => Check::new(
                "single-meeting",
                true,
                format!("{trials} random pairs (u, r) with r != 0 leave the hyperplane"),
                None,
            ),
            Some((t, x)) => Check::new(
                "single-meeting",
                false,
                format!("trial {t} found a second coset word on the hyperplane"),
                Some(x.to_string()),
            ),
        };
        (ReportKind::Sampled, check)
    };
    let sampled = kind == ReportKind::Sampled;
    Ok(VerificationReport {
        kind,
        n,
        q,
        m: code.m(),
        checks: vec![rank, coset],
        trials: sampled.then_some(trials),
        seed: sampled.then_some(seed),
    })
}
