use rayon::prelude::*;

use super::report::{Check, ReportKind, VerificationReport};
use crate::error::{Error, Result};
use crate::fqla::{checked_pow, ExplicitCode, FqVector};
use crate::hamming::{hamming_exponent, hamming_length};

/// Largest ambient space, in cells, that ball marking will allocate.
pub const MARK_CAP: u128 = 1 << 28;

/// Largest number of symbol comparisons a pairwise scan will make.
pub const PAIR_CAP: u128 = 1 << 34;

/// Two bits per cell: 0 unmarked, 1 marked once, 2 marked more than once.
struct Marks {
    bits: Vec<u8>,
}

impl Marks {
    fn new(cells: usize) -> Marks {
        Marks {
            bits: vec![0; cells.div_ceil(4)],
        }
    }

    #[inline]
    fn get(&self, cell: usize) -> u8 {
        (self.bits[cell >> 2] >> ((cell & 3) * 2)) & 3
    }

    #[inline]
    fn mark(&mut self, cell: usize) {
        let shift = (cell & 3) * 2;
        let byte = &mut self.bits[cell >> 2];
        let v = (*byte >> shift) & 3;
        if v < 2 {
            *byte = (*byte & !(3 << shift)) | ((v + 1) << shift);
        }
    }
}

/// Exact perfectness check for a code claimed to have parameter `m`.
///
/// Passes iff `|C| = q^{n-m}`, no cell of `F_q^n` lies in two radius-1 balls,
/// and every cell lies in one.
pub fn verify_perfect_explicit(code: &ExplicitCode, m: usize) -> Result<VerificationReport> {
    let (q, n) = (code.q(), code.n());
    if hamming_length(q, m) != Some(n) {
        return Err(Error::Precondition(format!(
            "length {n} is not (q^m - 1)/(q - 1) for q = {q}, m = {m}"
        )));
    }
    let cells = match checked_pow(q, n) {
        Some(c) if c <= MARK_CAP => c as usize,
        other => {
            return Err(Error::CapExceeded {
                what: "ball marking",
                requested: other.unwrap_or(u128::MAX),
                cap: MARK_CAP,
            })
        }
    };
    let expected = checked_pow(q, n - m).unwrap_or(u128::MAX);
    let size = Check::new(
        "size",
        code.len() as u128 == expected,
        format!("{} words, sphere-packing equality needs {expected}", code.len()),
        None,
    );

    let f = code.field();
    let weights: Vec<usize> = (0..n).map(|j| checked_pow(q, n - 1 - j).unwrap() as usize).collect();
    let mut marks = Marks::new(cells);
    for c in code.iter() {
        let idx = c.rank_index(q) as usize;
        marks.mark(idx);
        for (j, &w) in weights.iter().enumerate() {
            let old = c.get(j);
            let base = idx - old as usize * w;
            for alpha in f.nonzero() {
                marks.mark(base + f.add(old, alpha) as usize * w);
            }
        }
    }
    let mut double = None;
    let mut hole = None;
    let (mut doubles, mut holes) = (0usize, 0usize);
    for cell in 0..cells {
        match marks.get(cell) {
            0 => {
                holes += 1;
                hole.get_or_insert(cell);
            }
            2 => {
                doubles += 1;
                double.get_or_insert(cell);
            }
            _ => {}
        }
    }
    let witness = |cell: Option<usize>| cell.map(|c| FqVector::from_rank_index(c as u64, q, n).to_string());
    let packing = Check::new(
        "packing",
        doubles == 0,
        format!("{doubles} cells within distance 1 of two codewords"),
        witness(double),
    );
    let covering = Check::new(
        "covering",
        holes == 0,
        format!("{holes} of {cells} cells at distance >= 2 from the code"),
        witness(hole),
    );
    Ok(VerificationReport {
        kind: ReportKind::Exact,
        n,
        q,
        m,
        checks: vec![size, packing, covering],
        trials: None,
        seed: None,
    })
}

/// [`verify_perfect_explicit`] with `m` derived from the length.
pub fn verify_perfect(code: &ExplicitCode) -> Result<VerificationReport> {
    let m = hamming_exponent(code.q(), code.n()).ok_or_else(|| {
        Error::NotPerfect(format!(
            "length {} is not a Hamming length over GF({})",
            code.n(),
            code.q()
        ))
    })?;
    verify_perfect_explicit(code, m)
}

/// Checks that `code` is 1-perfect and returns its parameter `m`.
///
/// Small ambient spaces are marked exactly; larger ones fall back to the size
/// check plus a pairwise minimum-distance scan.
pub fn require_perfect(code: &ExplicitCode) -> Result<usize> {
    let (q, n) = (code.q(), code.n());
    let m = hamming_exponent(q, n)
        .ok_or_else(|| Error::NotPerfect(format!("length {n} is not a Hamming length over GF({q})")))?;
    if checked_pow(q, n - m) != Some(code.len() as u128) {
        return Err(Error::NotPerfect(format!(
            "{} words, expected {q}^{}",
            code.len(),
            n - m
        )));
    }
    if checked_pow(q, n).is_some_and(|c| c <= MARK_CAP) {
        let report = verify_perfect_explicit(code, m)?;
        if !report.passed() {
            return Err(Error::NotPerfect(report.summary_line()));
        }
    } else if code.len() > 1 && min_distance(code, PAIR_CAP)? < 3 {
        return Err(Error::NotPerfect("minimum distance below 3".into()));
    }
    Ok(m)
}

/// Minimum distance over all pairs of distinct codewords.
pub fn min_distance(code: &ExplicitCode, pair_cap: u128) -> Result<usize> {
    let len = code.len();
    if len < 2 {
        return Err(Error::Precondition(
            "minimum distance needs at least two codewords".into(),
        ));
    }
    let work = (len as u128 * (len as u128 - 1) / 2).saturating_mul(code.n() as u128);
    if work > pair_cap {
        return Err(Error::CapExceeded {
            what: "pairwise distance scan",
            requested: work,
            cap: pair_cap,
        });
    }
    let words = code.words();
    Ok((0..len - 1)
        .into_par_iter()
        .map(|a| {
            words[a + 1..]
                .iter()
                .map(|b| words[a].distance_unchecked(b))
                .min()
                .unwrap()
        })
        .min()
        .unwrap())
}
