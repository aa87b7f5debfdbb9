use crate::error::{Error, Result};
use crate::fqla::{FqMatrix, FqVector};
use crate::gf::Field;

/// A code held as a sorted, duplicate-free list of words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitCode {
    field: Field,
    n: usize,
    words: Vec<FqVector>,
}

impl ExplicitCode {
    /// Validates lengths and symbols, then sorts and deduplicates.
    pub fn new(field: Field, n: usize, mut words: Vec<FqVector>) -> Result<ExplicitCode> {
        let q = field.q();
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: w.len(),
                });
            }
            if let Some(s) = w.iter().find(|&s| s as u32 >= q) {
                return Err(Error::SymbolOutOfRange { symbol: s as u32, q });
            }
        }
        words.sort_unstable();
        words.dedup();
        Ok(ExplicitCode { field, n, words })
    }

    pub fn empty(field: Field, n: usize) -> ExplicitCode {
        ExplicitCode {
            field,
            n,
            words: Vec::new(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    /// Word length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of words.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[FqVector] {
        &self.words
    }

    pub fn into_words(self) -> Vec<FqVector> {
        self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FqVector> {
        self.words.iter()
    }

    /// Position of `w` in sorted order.
    pub fn index_of(&self, w: &FqVector) -> Option<usize> {
        self.words.binary_search(w).ok()
    }

    pub fn contains(&self, w: &FqVector) -> bool {
        self.index_of(w).is_some()
    }

    /// Appends the coordinate `p(x) = Σ x_i` to every word.
    pub fn extend_code(&self) -> ExplicitCode {
        let words = self.words.iter().map(|w| w.push(w.p_sum(&self.field))).collect();
        ExplicitCode::new(self.field.clone(), self.n + 1, words).expect("extension keeps symbols in range")
    }

    /// All words as rows of a matrix.
    pub fn to_matrix(&self) -> FqMatrix {
        FqMatrix::from_rows(self.field.clone(), self.n, &self.words).expect("words validated on construction")
    }
}

/// Calls `visit` on every element of `shift + rowspace(basis)`.
///
/// Rows must be linearly independent; exactly `q^rows` words are visited.
/// The walk steps through an F_p-basis of the span, adding one generator
/// per step, so each visit costs one vector addition.
pub fn for_each_coset_word(basis: &FqMatrix, shift: &FqVector, mut visit: impl FnMut(&FqVector)) {
    let f = basis.field();
    let p = f.p();
    let mut gens = Vec::with_capacity(basis.rows() * f.k() as usize);
    for r in 0..basis.rows() {
        let row = basis.row(r);
        let mut beta = 1u8;
        for _ in 0..f.k() {
            gens.push(row.scale(f, beta));
            beta = beta.wrapping_mul(p as u8);
        }
    }
    let mut digits = vec![0u32; gens.len()];
    let mut cur = shift.clone();
    visit(&cur);
    loop {
        let mut j = 0;
        loop {
            if j == gens.len() {
                return;
            }
            cur = cur.add(f, &gens[j]);
            digits[j] += 1;
            if digits[j] == p {
                digits[j] = 0;
                j += 1;
            } else {
                break;
            }
        }
        visit(&cur);
    }
}

pub fn coset_words(basis: &FqMatrix, shift: &FqVector) -> Vec<FqVector> {
    let mut out = Vec::new();
    for_each_coset_word(basis, shift, |w| out.push(w.clone()));
    out
}

/// `q^exp` when it fits in `u128`.
pub(crate) fn checked_pow(q: u32, exp: usize) -> Option<u128> {
    (q as u128).checked_pow(exp.try_into().ok()?)
}
