//! Arithmetic in small finite fields GF(p^k), q = p^k <= 16.
//!
//! Elements are addressed by index: the coefficient vector of the polynomial
//! representative read as a base-p number, lowest coefficient least
//! significant. For prime fields the index is the residue itself, and index 0
//! is always zero. Every operation is a table lookup.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 16;

/// Built-in moduli, low degree first. Fixed so element indices are stable.
const DEFAULT_MODULI: &[(u32, u32, &[u8])] = &[
    (2, 1, &[0, 1]),
    (3, 1, &[0, 1]),
    (5, 1, &[0, 1]),
    (7, 1, &[0, 1]),
    (11, 1, &[0, 1]),
    (13, 1, &[0, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (3, 2, &[2, 1, 1]),
];

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Remainder of `num` modulo the monic polynomial `den`, coefficients mod `p`.
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (t, &c) in den.iter().enumerate() {
                r[shift + t] = (r[shift + t] + p * p - lead * c % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    if k <= 1 {
        return true;
    }
    for deg in 1..=k / 2 {
        // every monic divisor candidate of this degree
        let count = (p as usize).pow(deg as u32);
        for code in 0..count {
            let mut div = Vec::with_capacity(deg + 1);
            let mut c = code;
            for _ in 0..deg {
                div.push((c % p as usize) as u32);
                c /= p as usize;
            }
            div.push(1);
            if poly_rem(modulus, &div, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

struct Tables {
    p: u8,
    k: u8,
    q: u8,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    exp: Vec<u8>,
    log: Vec<u8>,
}

/// A finite field of order at most 16 with precomputed arithmetic tables.
///
/// Cloning is cheap; clones share their tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

impl Field {
    /// Builds GF(p^k). Without `modulus` a built-in irreducible is used.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 || (p as u64).pow(k) > MAX_ORDER as u64 {
            return Err(Error::UnsupportedOrder { p, k });
        }
        let modulus: Vec<u32> = match modulus {
            Some(m) => m.to_vec(),
            None => DEFAULT_MODULI
                .iter()
                .find(|(pp, kk, _)| *pp == p && *kk == k)
                .map(|(_, _, m)| m.iter().map(|&c| c as u32).collect())
                .ok_or(Error::NoDefaultModulus { p, k })?,
        };
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::MalformedModulus { p, k });
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }
        Ok(Field(Arc::new(Self::tables(p, k, modulus))))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// The field of order `q` with its built-in modulus.
    pub fn with_order(q: u32) -> Result<Field> {
        if !(2..=MAX_ORDER).contains(&q) {
            return Err(Error::Unsupported(format!("field order {q}")));
        }
        for p in 2..=q {
            if !is_prime(p) || !q.is_multiple_of(p) {
                continue;
            }
            let mut k = 0;
            let mut r = q;
            while r.is_multiple_of(p) {
                r /= p;
                k += 1;
            }
            if r != 1 {
                return Err(Error::Unsupported(format!("{q} is not a prime power")));
            }
            return Field::new(p, k, None);
        }
        Err(Error::Unsupported(format!("{q} is not a prime power")))
    }

    fn tables(p: u32, k: u32, modulus: Vec<u32>) -> Tables {
        let q = p.pow(k) as usize;
        let digits = |mut x: usize| {
            let mut d = vec![0u32; k as usize];
            for slot in d.iter_mut() {
                *slot = (x % p as usize) as u32;
                x /= p as usize;
            }
            d
        };
        let index = |d: &[u32]| d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize);

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&s) as u8;
                let mut prod = vec![0u32; 2 * k as usize - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(k as usize, 0);
                mul[a * q + b] = index(&r) as u8;
            }
        }
        let neg: Vec<u8> = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
            .collect();
        let mut inv = vec![0u8; q];
        for a in 1..q {
            inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
        }
        // smallest primitive element drives exp/log
        let generator = (1..q)
            .find(|&g| {
                let mut x = 1usize;
                (1..q - 1).all(|_| {
                    x = mul[x * q + g] as usize;
                    x != 1
                })
            })
            .unwrap();
        let mut exp = vec![0u8; q - 1];
        let mut log = vec![0u8; q];
        let mut x = 1usize;
        for (e, slot) in exp.iter_mut().enumerate() {
            *slot = x as u8;
            log[x] = e as u8;
            x = mul[x * q + generator] as usize;
        }
        Tables {
            p: p as u8,
            k: k as u8,
            q: q as u8,
            modulus: modulus.iter().map(|&c| c as u8).collect(),
            add,
            mul,
            neg,
            inv,
            exp,
            log,
        }
    }

    pub fn p(&self) -> u32 {
        self.0.p as u32
    }

    pub fn k(&self) -> u32 {
        self.0.k as u32
    }

    /// Field order.
    pub fn q(&self) -> u32 {
        self.0.q as u32
    }

    pub fn characteristic(&self) -> u32 {
        self.p()
    }

    /// Modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    /// True when the modulus is the built-in one for this (p, k).
    pub fn has_default_modulus(&self) -> bool {
        DEFAULT_MODULI
            .iter()
            .any(|(p, k, m)| *p == self.p() && *k == self.k() && *m == self.modulus())
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.0.add[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.0.mul[a as usize * self.0.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.0.neg[a as usize]
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.0.inv[a as usize])
    }

    pub fn div(&self, a: u8, b: u8) -> Result<u8> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Inverse of an element known to be nonzero.
    #[inline]
    pub(crate) fn inv_nz(&self, a: u8) -> u8 {
        debug_assert!(a != 0);
        self.0.inv[a as usize]
    }

    /// Powers of the smallest primitive element: `exp_table()[e] = g^e`.
    pub fn exp_table(&self) -> &[u8] {
        &self.0.exp
    }

    /// Discrete logarithms base the primitive element; entry 0 is unused.
    pub fn log_table(&self) -> &[u8] {
        &self.0.log
    }

    /// Nonzero elements in index order.
    pub fn nonzero(&self) -> impl Iterator<Item = u8> {
        1..self.0.q
    }

    pub fn element(&self, idx: u32) -> Result<FieldElement<'_>> {
        if idx >= self.q() {
            return Err(Error::SymbolOutOfRange {
                symbol: idx,
                q: self.q(),
            });
        }
        Ok(FieldElement {
            field: self,
            idx: idx as u8,
        })
    }

    pub(crate) fn check_symbol(&self, s: u32) -> Result<u8> {
        if s >= self.q() {
            Err(Error::SymbolOutOfRange { symbol: s, q: self.q() })
        } else {
            Ok(s as u8)
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p(), self.k(), self.modulus())
    }
}

/// The binary and unary field operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
}

/// An element tied to the field it lives in.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f Field,
    idx: u8,
}

impl<'f> FieldElement<'f> {
    pub fn index(&self) -> u8 {
        self.idx
    }

    pub fn field(&self) -> &'f Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.idx == 0
    }

    /// Applies `op`. Unary operations ignore `rhs` apart from the field check.
    pub fn arith(self, op: ArithOp, rhs: FieldElement<'_>) -> Result<FieldElement<'f>> {
        if self.field != rhs.field {
            return Err(Error::MixedFields);
        }
        let f = self.field;
        let (a, b) = (self.idx, rhs.idx);
        let idx = match op {
            ArithOp::Add => f.add(a, b),
            ArithOp::Sub => f.sub(a, b),
            ArithOp::Mul => f.mul(a, b),
            ArithOp::Div => f.div(a, b)?,
            ArithOp::Neg => f.neg(a),
            ArithOp::Inv => f.inv(a)?,
        };
        Ok(FieldElement { field: f, idx })
    }

    pub fn inv(self) -> Result<FieldElement<'f>> {
        Ok(FieldElement {
            field: self.field,
            idx: self.field.inv(self.idx)?,
        })
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.idx == other.idx && self.field == other.field
    }
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.idx)
    }
}

impl<'f> std::ops::Neg for FieldElement<'f> {
    type Output = FieldElement<'f>;

    fn neg(self) -> FieldElement<'f> {
        FieldElement {
            field: self.field,
            idx: self.field.neg(self.idx),
        }
    }
}

/// A permutation of the elements of a field, given as an index table.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FieldPermutation {
    table: Vec<u8>,
}

impl FieldPermutation {
    pub fn new(q: u32, table: &[u32]) -> Result<FieldPermutation> {
        if table.len() != q as usize {
            return Err(Error::LengthMismatch {
                expected: q as usize,
                found: table.len(),
            });
        }
        let mut seen = vec![false; q as usize];
        for &t in table {
            if t >= q || std::mem::replace(&mut seen[t as usize], true) {
                return Err(Error::NotABijection);
            }
        }
        Ok(FieldPermutation {
            table: table.iter().map(|&t| t as u8).collect(),
        })
    }

    pub fn identity(q: u32) -> FieldPermutation {
        FieldPermutation {
            table: (0..q as u8).collect(),
        }
    }

    /// The transposition 0 <-> 1; on GF(2) the only nontrivial permutation.
    pub fn swap(q: u32) -> FieldPermutation {
        let mut table: Vec<u8> = (0..q as u8).collect();
        table.swap(0, 1);
        FieldPermutation { table }
    }

    /// Fixes 0 and cycles 1 -> 2 -> ... -> q-1 -> 1.
    pub fn cycle(q: u32) -> FieldPermutation {
        let table = (0..q as u8)
            .map(|x| match x {
                0 => 0,
                x if x + 1 < q as u8 => x + 1,
                _ => 1,
            })
            .collect();
        FieldPermutation { table }
    }

    pub fn order(&self) -> u32 {
        self.table.len() as u32
    }

    #[inline]
    pub fn apply(&self, x: u8) -> u8 {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    pub fn inverse(&self) -> FieldPermutation {
        let mut table = vec![0u8; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y as usize] = x as u8;
        }
        FieldPermutation { table }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FieldPermutation) -> Result<FieldPermutation> {
        if self.table.len() != other.table.len() {
            return Err(Error::LengthMismatch {
                expected: self.table.len(),
                found: other.table.len(),
            });
        }
        Ok(FieldPermutation {
            table: other.table.iter().map(|&x| self.table[x as usize]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(x, &y)| x == y as usize)
    }

    pub fn fixes_one(&self) -> bool {
        self.table[1] == 1
    }
}

impl fmt::Display for FieldPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.table.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_fields() -> Vec<Field> {
        DEFAULT_MODULI
            .iter()
            .map(|(p, k, _)| Field::new(*p, *k, None).unwrap())
            .collect()
    }

    #[test]
    fn binary_field_is_xor_and_and() {
        let f = Field::prime(2).unwrap();
        for a in 0..2u8 {
            for b in 0..2u8 {
                assert_eq!(f.add(a, b), a ^ b);
                assert_eq!(f.mul(a, b), a & b);
            }
        }
    }

    #[test]
    fn gf4_x_squared_is_x_plus_one() {
        let f = Field::new(2, 2, None).unwrap();
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.inv(2).unwrap(), 3);
    }

    #[test]
    fn small_prime_arithmetic() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.neg(2), 3);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(Field::new(4, 1, None), Err(Error::NonPrime(4))));
        assert!(matches!(Field::new(2, 5, None), Err(Error::UnsupportedOrder { .. })));
        assert!(matches!(Field::new(17, 1, None), Err(Error::UnsupportedOrder { .. })));
        // x^2 + 1 = (x + 1)^2 over GF(2)
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 1, 0])),
            Err(Error::MalformedModulus { .. })
        ));
        assert!(Field::new(2, 4, Some(&[1, 0, 0, 1, 1])).is_ok());
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(Field::new(2, 4, Some(&[1, 0, 1, 0, 1])).is_err());
    }

    #[test]
    fn field_axioms_hold_exhaustively() {
        for f in all_fields() {
            let q = f.q() as u8;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn exp_and_log_are_inverse() {
        for f in all_fields() {
            for x in f.nonzero() {
                assert_eq!(f.exp_table()[f.log_table()[x as usize] as usize], x);
            }
            for (e, &x) in f.exp_table().iter().enumerate() {
                assert_eq!(f.log_table()[x as usize] as usize, e);
            }
        }
    }

    #[test]
    fn prime_field_indices_are_residues() {
        let f = Field::prime(7).unwrap();
        for a in 0..7u8 {
            for b in 0..7u8 {
                assert_eq!(f.add(a, b), (a + b) % 7);
                assert_eq!(f.mul(a, b) as u32, (a as u32 * b as u32) % 7);
            }
        }
    }

    #[test]
    fn with_order_finds_prime_power() {
        assert_eq!(Field::with_order(9).unwrap().p(), 3);
        assert_eq!(Field::with_order(8).unwrap().k(), 3);
        assert!(Field::with_order(6).is_err());
        assert!(Field::with_order(12).is_err());
    }

    #[test]
    fn element_arith_checks_fields() {
        let f3 = Field::prime(3).unwrap();
        let f5 = Field::prime(5).unwrap();
        let a = f3.element(2).unwrap();
        let b = f5.element(2).unwrap();
        assert!(matches!(a.arith(ArithOp::Add, b), Err(Error::MixedFields)));
        let two = f3.element(2).unwrap();
        assert_eq!(a.arith(ArithOp::Add, two).unwrap().index(), 1);
        let zero = f3.element(0).unwrap();
        assert!(matches!(a.arith(ArithOp::Div, zero), Err(Error::DivisionByZero)));
        assert!(matches!(zero.inv(), Err(Error::DivisionByZero)));
        assert!(f3.element(3).is_err());
    }

    #[test]
    fn permutations_validate() {
        let swap = FieldPermutation::new(2, &[1, 0]).unwrap();
        assert_eq!(swap, FieldPermutation::swap(2));
        assert!(!swap.fixes_one());
        let p = FieldPermutation::new(3, &[0, 2, 1]).unwrap();
        assert_eq!(p.apply(1), 2);
        assert_eq!(p, FieldPermutation::cycle(3));
        assert!(matches!(
            FieldPermutation::new(3, &[0, 1, 1]),
            Err(Error::NotABijection)
        ));
        assert!(matches!(
            FieldPermutation::new(3, &[0, 1]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn inverse_composes_to_identity() {
        // all 24 permutations of a 4-element field
        let mut tables = vec![vec![]];
        for _ in 0..4 {
            let mut next = vec![];
            for t in &tables {
                for x in 0..4u32 {
                    if !t.contains(&x) {
                        let mut u = t.clone();
                        u.push(x);
                        next.push(u);
                    }
                }
            }
            tables = next;
        }
        assert_eq!(tables.len(), 24);
        for t in tables {
            let s = FieldPermutation::new(4, &t).unwrap();
            assert!(s.compose(&s.inverse()).unwrap().is_identity());
            assert!(s.inverse().compose(&s).unwrap().is_identity());
        }
    }
}
