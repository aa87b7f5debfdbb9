//! Shorthands accepted on the command line.

use std::path::Path;

use perfect_forge::constructions::{LambdaFunction, SigmaMap};
use perfect_forge::fqla::io::read_code;
use perfect_forge::fqla::{ExplicitCode, FqVector};
use perfect_forge::gf::{Field, FieldPermutation};
use perfect_forge::hamming::HammingCode;

use crate::fail::{Failure, Outcome};

fn numbers<T: std::str::FromStr>(text: &str, what: &str) -> Outcome<Vec<T>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad {what} entry {t:?}")))
        })
        .collect()
}

fn seed_of(text: &str) -> Option<Outcome<u64>> {
    text.strip_prefix("seeded:")
        .map(|s| s.parse().map_err(|_| Failure::usage(format!("bad seed {s:?}"))))
}

/// `swap`, `cycle`, `identity`, or a comma table.
pub fn sigma(text: &str, q: u32) -> Outcome<FieldPermutation> {
    match text {
        "swap" if q == 2 => Ok(FieldPermutation::swap(2)),
        "swap" => Err(Failure::usage(
            "swap is the transposition of GF(2); use cycle or a table",
        )),
        "cycle" => Ok(FieldPermutation::cycle(q)),
        "identity" => Ok(FieldPermutation::identity(q)),
        table => Ok(FieldPermutation::new(q, &numbers::<u32>(table, "permutation")?)?),
    }
}

/// [`sigma`], or `seeded:SEED` for one shuffled permutation per codeword.
pub fn sigma_map(text: &str, q: u32) -> Outcome<SigmaMap> {
    match seed_of(text) {
        Some(seed) => Ok(SigmaMap::Seeded(seed?)),
        None => Ok(SigmaMap::Uniform(sigma(text, q)?)),
    }
}

/// `zero`, `seeded:SEED`, or `table:v0,v1,...`.
pub fn lambda(text: &str) -> Outcome<LambdaFunction> {
    if text == "zero" {
        return Ok(LambdaFunction::Zero);
    }
    if let Some(seed) = seed_of(text) {
        return Ok(LambdaFunction::Seeded(seed?));
    }
    match text.strip_prefix("table:") {
        Some(t) => Ok(LambdaFunction::Table(numbers(t, "lambda")?)),
        None => Err(Failure::usage(format!("unknown lambda {text:?}"))),
    }
}

/// A permutation of `0..=n`: `identity` or a comma list.
pub fn pi(text: &str, n: usize) -> Outcome<Vec<usize>> {
    if text == "identity" {
        Ok((0..=n).collect())
    } else {
        numbers(text, "pi")
    }
}

/// `hamming:q,m`, `trivial:q`, or a code file.
pub fn base(text: &str, cap: u128) -> Outcome<ExplicitCode> {
    if let Some(args) = text.strip_prefix("hamming:") {
        let v: Vec<usize> = numbers(args, "hamming")?;
        let [q, m] = v[..] else {
            return Err(Failure::usage("expected hamming:q,m"));
        };
        return Ok(HammingCode::build(q as u32, m)?.codewords(cap)?);
    }
    if let Some(q) = text.strip_prefix("trivial:") {
        let q: u32 = q.parse().map_err(|_| Failure::usage("expected trivial:q"))?;
        return Ok(ExplicitCode::new(Field::with_order(q)?, 1, vec![FqVector::zeros(1)])?);
    }
    Ok(read_code(&read_file(Path::new(text))?)?)
}

pub fn read_file(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::other(format!("{}: {e}", path.display())))
}

/// `I:SIGMA:BLOCK_FILE`.
pub fn part(text: &str, q: u32) -> Outcome<(usize, FieldPermutation, ExplicitCode)> {
    let mut it = text.splitn(3, ':');
    let (Some(i), Some(s), Some(path)) = (it.next(), it.next(), it.next()) else {
        return Err(Failure::usage(format!("expected I:SIGMA:FILE, found {text:?}")));
    };
    let i = i.parse().map_err(|_| Failure::usage(format!("bad coordinate {i:?}")))?;
    Ok((i, sigma(s, q)?, read_code(&read_file(Path::new(path))?)?))
}
