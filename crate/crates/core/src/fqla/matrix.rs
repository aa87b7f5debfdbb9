use crate::error::{Error, Result};
use crate::fqla::FqVector;
use crate::gf::Field;

/// A dense matrix over a small finite field, entries row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FqMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<u8>,
}

/// Output of [`FqMatrix::rank_rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    /// Reduced row echelon form; rows past `rank` are zero.
    pub matrix: FqMatrix,
    /// 0-based pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

impl FqMatrix {
    pub fn new(field: Field, rows: usize, cols: usize, entries: Vec<u8>) -> Result<FqMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        for &e in &entries {
            field.check_symbol(e as u32)?;
        }
        Ok(FqMatrix {
            field,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> FqMatrix {
        FqMatrix {
            field,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> FqMatrix {
        let mut m = FqMatrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Stacks vectors as rows; `cols` fixes the width when `rows` is empty.
    pub fn from_rows(field: Field, cols: usize, rows: &[FqVector]) -> Result<FqMatrix> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            for s in r.iter() {
                field.check_symbol(s as u32)?;
                entries.push(s);
            }
        }
        Ok(FqMatrix {
            field,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row_slice(&self, r: usize) -> &[u8] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row(&self, r: usize) -> FqVector {
        FqVector::from_symbols(self.row_slice(r))
    }

    pub fn row_vectors(&self) -> Vec<FqVector> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u8> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Keeps the given 0-based columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> FqMatrix {
        let mut m = FqMatrix::zeros(self.field.clone(), self.rows, cols.len());
        for r in 0..self.rows {
            for (k, &c) in cols.iter().enumerate() {
                m.set(r, k, self.get(r, c));
            }
        }
        m
    }

    /// `M · xᵀ` as a vector of length `rows`.
    pub fn mul_vec(&self, x: &FqVector) -> Result<Vec<u8>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: x.len(),
            });
        }
        let f = &self.field;
        let xs = x.symbols();
        Ok((0..self.rows)
            .map(|r| {
                self.row_slice(r)
                    .iter()
                    .zip(&xs)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    /// Gaussian elimination to reduced row echelon form. Columns are scanned
    /// left to right; the pivot is the lowest-indexed remaining row with a
    /// nonzero entry in the column.
    pub fn rank_rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for k in 0..self.cols {
                    m.entries.swap(pr * self.cols + k, r * self.cols + k);
                }
            }
            let inv = f.inv_nz(m.get(r, c));
            for k in 0..self.cols {
                let v = m.get(r, k);
                m.set(r, k, f.mul(inv, v));
            }
            for i in 0..self.rows {
                let factor = m.get(i, c);
                if i == r || factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for k in c..self.cols {
                    let pivot_row = m.get(r, k);
                    if pivot_row != 0 {
                        let v = f.add(m.get(i, k), f.mul(neg, pivot_row));
                        m.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            rank: pivots.len(),
            matrix: m,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_rref().rank
    }

    /// Basis of the right null space `{x : M xᵀ = 0}`, one row per free column.
    pub fn kernel(&self) -> FqMatrix {
        let f = &self.field;
        let rr = self.rank_rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !rr.pivots.contains(c)).collect();
        let mut k = FqMatrix::zeros(f.clone(), free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            k.set(row, fc, 1);
            for (pr, &pc) in rr.pivots.iter().enumerate() {
                k.set(row, pc, f.neg(rr.matrix.get(pr, fc)));
            }
        }
        k
    }

    /// Coefficients `c` with `Σ c_r · row_r = v`, or `None` when `v` is not in
    /// the row space. Free coefficients are set to zero.
    pub fn in_span(&self, v: &FqVector) -> Result<Option<Vec<u8>>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let f = &self.field;
        // solve Mᵀ cᵀ = vᵀ through the augmented system [Mᵀ | vᵀ]
        let width = self.rows + 1;
        let mut aug = FqMatrix::zeros(f.clone(), self.cols, width);
        for c in 0..self.cols {
            for r in 0..self.rows {
                aug.set(c, r, self.get(r, c));
            }
            aug.set(c, self.rows, v.get(c));
        }
        let rr = aug.rank_rref();
        if rr.pivots.last() == Some(&self.rows) {
            return Ok(None);
        }
        let mut coeffs = vec![0u8; self.rows];
        for (pr, &pc) in rr.pivots.iter().enumerate() {
            coeffs[pc] = rr.matrix.get(pr, self.rows);
        }
        Ok(Some(coeffs))
    }

    /// `Σ coeffs_r · row_r`.
    pub fn combine(&self, coeffs: &[u8]) -> FqVector {
        let f = &self.field;
        let mut out = vec![0u8; self.cols];
        for (r, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &e) in out.iter_mut().zip(self.row_slice(r)) {
                *o = f.add(*o, f.mul(c, e));
            }
        }
        FqVector::from_symbols(&out)
    }

    /// Row-stacks `self` over `other`.
    pub fn stack(&self, other: &FqMatrix) -> Result<FqMatrix> {
        if self.cols != other.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        if self.field != other.field {
            return Err(Error::MixedFields);
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(FqMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    /// The nonzero rows of the reduced echelon form.
    pub fn row_reduced_basis(&self) -> FqMatrix {
        let rr = self.rank_rref();
        let mut m = rr.matrix;
        m.entries.truncate(rr.rank * self.cols);
        m.rows = rr.rank;
        m
    }
}

/// An echelonised row space that grows one vector at a time.
///
/// Each stored row has a unit pivot and is zero at the pivots of all rows
/// stored before it, so one forward pass clears every pivot of a vector.
#[derive(Clone, Debug)]
pub struct RowSpace {
    field: Field,
    n: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(field: Field, n: usize) -> RowSpace {
        RowSpace {
            field,
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_matrix(m: &FqMatrix) -> RowSpace {
        let mut s = RowSpace::new(m.field().clone(), m.cols());
        for r in 0..m.rows() {
            s.insert_slice(m.row_slice(r));
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    fn reduce(&self, v: &mut [u8]) {
        let f = &self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &r) in v.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.add(*x, f.mul(neg, r));
                }
            }
        }
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: &FqVector) -> bool {
        self.insert_slice(&v.symbols())
    }

    fn insert_slice(&mut self, v: &[u8]) -> bool {
        assert_eq!(v.len(), self.n);
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv_nz(v[p]);
        for x in v.iter_mut() {
            *x = self.field.mul(inv, *x);
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    /// The unique element of `v + span` that is zero at every pivot.
    pub fn representative(&self, v: &FqVector) -> FqVector {
        let mut s = v.symbols();
        self.reduce(&mut s);
        FqVector::from_symbols(&s)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Stored basis rows, in insertion order.
    pub fn basis(&self) -> FqMatrix {
        let rows: Vec<FqVector> = self.rows.iter().map(|r| FqVector::from_symbols(r)).collect();
        FqMatrix::from_rows(self.field.clone(), self.n, &rows).expect("rows share the space length")
    }

    pub fn contains(&self, v: &FqVector) -> bool {
        if v.len() != self.n {
            return false;
        }
        let mut v = v.symbols();
        self.reduce(&mut v);
        v.iter().all(|&x| x == 0)
    }

    /// 0-based pivot columns in insertion order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}
