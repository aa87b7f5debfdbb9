use rayon::prelude::*;

use super::report::{Check, ReportKind, VerificationReport};
use crate::constructions::ImplicitSwitchedCode;
use crate::fqla::{FqMatrix, FqVector};
use crate::rng::SplitMix64;

fn random_combination(basis: &FqMatrix, shift: &FqVector, q: u32, rng: &mut SplitMix64) -> FqVector {
    let coeffs: Vec<u8> = (0..basis.rows()).map(|_| rng.below(q as u64) as u8).collect();
    basis.combine(&coeffs).add(basis.field(), shift)
}

/// Draws the probe for one trial.
///
/// A third of the probes are uniform over `F_q^n`. The rest start from a word
/// of a switched coset or of a removed coset, where any fault in the surgery
/// would show, and are then moved by an error of weight at most 2.
fn probe(code: &ImplicitSwitchedCode, rng: &mut SplitMix64) -> FqVector {
    let (n, q) = (code.n(), code.q());
    let base = code.base();
    let f = base.field();
    let mode = rng.below(3);
    if mode == 0 || code.parts().is_empty() {
        let symbols: Vec<u8> = (0..n).map(|_| rng.below(q as u64) as u8).collect();
        return FqVector::from_symbols(&symbols);
    }
    let part = &code.parts()[rng.below(code.parts().len() as u64) as usize];
    let c = &part.component;
    let mut x = random_combination(c.basis(), c.representative(), q, rng);
    if mode == 1 {
        x = x.permute_at(c.coordinate(), &part.sigma);
    }
    for _ in 0..rng.below(3) {
        let j = rng.below(n as u64) as usize;
        let alpha = 1 + rng.below(q as u64 - 1) as u8;
        x.set(j, f.add(x.get(j), alpha));
    }
    x
}

/// Counts codewords in the radius-1 ball of `trials` probe vectors; passes
/// iff every count is exactly 1.
///
/// Trial `t` draws from `SplitMix64::substream(seed, t)`, so the report does
/// not depend on how trials are spread over threads.
pub fn sampled_perfect_check(code: &ImplicitSwitchedCode, trials: u64, seed: u64) -> VerificationReport {
    let failures: Vec<(u64, FqVector, usize)> = (0..trials)
        .into_par_iter()
        .filter_map(|t| {
            let mut rng = SplitMix64::substream(seed, t);
            let x = probe(code, &mut rng);
            let count = code.ball_count(&x).expect("probe has the code length");
            (count != 1).then_some((t, x, count))
        })
        .collect();
    let ball = code.n() * (code.q() as usize - 1) + 1;
    let check = match failures.first() {
        None => Check::new(
            "ball-count",
            true,
            format!("{trials} probes, each ball of {ball} words holds exactly one codeword"),
            None,
        ),
        Some((t, x, count)) => Check::new(
            "ball-count",
            false,
            format!(
                "{} of {trials} probes failed; first at trial {t} with {count} codewords in its ball",
                failures.len()
            ),
            Some(x.to_string()),
        ),
    };
    VerificationReport {
        kind: ReportKind::Sampled,
        n: code.n(),
        q: code.q(),
        m: code.m(),
        checks: vec![check],
        trials: Some(trials),
        seed: Some(seed),
    }
}
