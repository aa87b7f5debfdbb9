use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldPermutation};

const SYMBOLS_PER_LIMB: usize = 16;
const LOW_NIBBLES: u64 = 0x1111_1111_1111_1111;

/// A word of length `n` over a field of order at most 16.
///
/// Symbols are field element indices packed four bits each, most significant
/// nibble first, so the derived ordering is lexicographic in the symbols.
/// Vectors do not carry their field; arithmetic takes it as an argument.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqVector {
    len: usize,
    limbs: SmallVec<[u64; 4]>,
}

#[inline]
fn slot(j: usize) -> (usize, u32) {
    (j / SYMBOLS_PER_LIMB, (60 - 4 * (j % SYMBOLS_PER_LIMB)) as u32)
}

/// Number of nonzero nibbles in a limb.
#[inline]
fn nonzero_nibbles(x: u64) -> u32 {
    ((x | x >> 1 | x >> 2 | x >> 3) & LOW_NIBBLES).count_ones()
}

impl FqVector {
    pub fn zeros(len: usize) -> FqVector {
        FqVector {
            len,
            limbs: SmallVec::from_elem(0, len.div_ceil(SYMBOLS_PER_LIMB)),
        }
    }

    /// Packs symbols without range checks beyond the 4-bit limit.
    pub fn from_symbols(symbols: &[u8]) -> FqVector {
        let mut v = FqVector::zeros(symbols.len());
        for (j, &s) in symbols.iter().enumerate() {
            v.set(j, s);
        }
        v
    }

    /// Packs symbols, checking each is an element of `field`.
    pub fn from_field_symbols(field: &Field, symbols: &[u32]) -> Result<FqVector> {
        let mut v = FqVector::zeros(symbols.len());
        for (j, &s) in symbols.iter().enumerate() {
            v.set(j, field.check_symbol(s)?);
        }
        Ok(v)
    }

    /// `alpha` at 0-based position `j`, zero elsewhere.
    pub fn unit(len: usize, j: usize, alpha: u8) -> FqVector {
        let mut v = FqVector::zeros(len);
        v.set(j, alpha);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Symbol at 0-based position `j`.
    #[inline]
    pub fn get(&self, j: usize) -> u8 {
        debug_assert!(j < self.len);
        let (w, sh) = slot(j);
        ((self.limbs[w] >> sh) & 0xF) as u8
    }

    #[inline]
    pub fn set(&mut self, j: usize, s: u8) {
        assert!(j < self.len && s < 16);
        let (w, sh) = slot(j);
        self.limbs[w] = (self.limbs[w] & !(0xF << sh)) | ((s as u64) << sh);
    }

    pub fn symbols(&self) -> Vec<u8> {
        (0..self.len).map(|j| self.get(j)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len).map(move |j| self.get(j))
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    pub fn weight(&self) -> usize {
        self.limbs.iter().map(|&l| nonzero_nibbles(l) as usize).sum()
    }

    /// 1-based coordinates of the nonzero symbols.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&j| self.get(j) != 0).map(|j| j + 1).collect()
    }

    /// Hamming distance. Two symbols differ exactly when their nibbles do.
    pub fn distance(&self, other: &FqVector) -> Result<usize> {
        self.check_len(other)?;
        Ok(self.distance_unchecked(other))
    }

    #[inline]
    pub(crate) fn distance_unchecked(&self, other: &FqVector) -> usize {
        self.limbs
            .iter()
            .zip(&other.limbs)
            .map(|(a, b)| nonzero_nibbles(a ^ b) as usize)
            .sum()
    }

    pub(crate) fn check_len(&self, other: &FqVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                found: other.len,
            });
        }
        Ok(())
    }

    pub fn add(&self, field: &Field, other: &FqVector) -> FqVector {
        assert_eq!(self.len, other.len);
        if field.p() == 2 {
            // characteristic 2: index addition is bitwise xor
            return FqVector {
                len: self.len,
                limbs: self.limbs.iter().zip(&other.limbs).map(|(a, b)| a ^ b).collect(),
            };
        }
        let mut out = FqVector::zeros(self.len);
        for j in 0..self.len {
            out.set(j, field.add(self.get(j), other.get(j)));
        }
        out
    }

    pub fn sub(&self, field: &Field, other: &FqVector) -> FqVector {
        self.add(field, &other.neg(field))
    }

    pub fn neg(&self, field: &Field) -> FqVector {
        if field.p() == 2 {
            return self.clone();
        }
        self.map(|s| field.neg(s))
    }

    pub fn scale(&self, field: &Field, alpha: u8) -> FqVector {
        self.map(|s| field.mul(alpha, s))
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, field: &Field, alpha: u8, other: &FqVector) -> FqVector {
        let mut out = self.clone();
        for j in 0..self.len {
            let s = other.get(j);
            if s != 0 {
                out.set(j, field.add(out.get(j), field.mul(alpha, s)));
            }
        }
        out
    }

    fn map(&self, f: impl Fn(u8) -> u8) -> FqVector {
        let mut out = FqVector::zeros(self.len);
        for j in 0..self.len {
            out.set(j, f(self.get(j)));
        }
        out
    }

    /// Sum of all symbols.
    pub fn p_sum(&self, field: &Field) -> u8 {
        self.iter().fold(0, |acc, s| field.add(acc, s))
    }

    /// Applies `sigma` at the 1-based coordinate `i` only.
    pub fn permute_at(&self, i: usize, sigma: &FieldPermutation) -> FqVector {
        let mut out = self.clone();
        out.set(i - 1, sigma.apply(self.get(i - 1)));
        out
    }

    /// Deletes the 1-based coordinate `i`.
    pub fn puncture(&self, i: usize) -> FqVector {
        let s: Vec<u8> = self
            .iter()
            .enumerate()
            .filter(|&(j, _)| j + 1 != i)
            .map(|(_, s)| s)
            .collect();
        FqVector::from_symbols(&s)
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &FqVector) -> FqVector {
        let mut s = self.symbols();
        s.extend(other.iter());
        FqVector::from_symbols(&s)
    }

    pub fn push(&self, s: u8) -> FqVector {
        let mut v = self.symbols();
        v.push(s);
        FqVector::from_symbols(&v)
    }

    /// Position of this word in `F_q^n` read as a base-q number, coordinate 1
    /// most significant.
    pub fn rank_index(&self, q: u32) -> u64 {
        self.iter().fold(0u64, |acc, s| acc * q as u64 + s as u64)
    }

    pub fn from_rank_index(mut index: u64, q: u32, len: usize) -> FqVector {
        let mut v = FqVector::zeros(len);
        for j in (0..len).rev() {
            v.set(j, (index % q as u64) as u8);
            index /= q as u64;
        }
        v
    }
}

impl fmt::Debug for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for j in 0..self.len {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.get(j))?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for FqVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in 0..self.len {
            if j > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", self.get(j))?;
        }
        Ok(())
    }
}

impl serde::Serialize for FqVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Weight, support and (optionally) distance of a word in one call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VecStats {
    pub weight: usize,
    pub support: Vec<usize>,
    pub distance: Option<usize>,
}

pub fn vec_stats(x: &FqVector, y: Option<&FqVector>) -> Result<VecStats> {
    Ok(VecStats {
        weight: x.weight(),
        support: x.support(),
        distance: y.map(|y| x.distance(y)).transpose()?,
    })
}
