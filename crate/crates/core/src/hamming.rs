//! q-ary Hamming codes and the projective geometry of their columns.
//!
//! The parity-check columns of `H_{q,m}` are the points of `PG(m-1, q)`: one
//! normalised representative (topmost nonzero entry equal to 1) for every
//! line through the origin of `F_q^m`. Points are identified with codeword
//! coordinates, so every point index in this module is 1-based.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fqla::{checked_pow, for_each_coset_word, ExplicitCode, FqMatrix, FqVector};
use crate::gf::Field;

const MAX_LOOKUP: u128 = 1 << 24;

/// Number of points of `PG(m-1, q)`, i.e. the Hamming length `(q^m - 1)/(q - 1)`.
pub fn hamming_length(q: u32, m: usize) -> Option<usize> {
    let qm = checked_pow(q, m)?;
    usize::try_from((qm - 1) / (q as u128 - 1)).ok()
}

/// The `m >= 1` with `n = (q^m - 1)/(q - 1)`, if any.
pub fn hamming_exponent(q: u32, n: usize) -> Option<usize> {
    (1..64)
        .map_while(|m| hamming_length(q, m).map(|len| (m, len)))
        .take_while(|&(_, len)| len <= n)
        .find(|&(_, len)| len == n)
        .map(|(m, _)| m)
}

/// Points of `PG(m-1, q)` in a fixed order, with the inverse map taking any
/// nonzero vector to its point and scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveOrder {
    field: Field,
    m: usize,
    points: Vec<Vec<u8>>,
    /// Indexed by the base-q value of a vector: (0-based point, scalar).
    lookup: Vec<(u32, u8)>,
}

fn vector_value(q: u32, z: &[u8]) -> usize {
    z.iter().fold(0usize, |acc, &s| acc * q as usize + s as usize)
}

impl ProjectiveOrder {
    /// Canonical order: normalised points sorted by their base-q value read
    /// top to bottom.
    pub fn canonical(field: Field, m: usize) -> Result<ProjectiveOrder> {
        let q = field.q();
        let total = Self::table_size(q, m)?;
        let mut points = Vec::new();
        for value in 1..total {
            let mut z = vec![0u8; m];
            let mut v = value;
            for slot in z.iter_mut().rev() {
                *slot = (v % q as usize) as u8;
                v /= q as usize;
            }
            if z.iter().find(|&&s| s != 0) == Some(&1) {
                points.push(z);
            }
        }
        Self::from_columns(field, m, points)
    }

    fn table_size(q: u32, m: usize) -> Result<usize> {
        if m == 0 {
            return Err(Error::Unsupported("projective space needs m >= 1".into()));
        }
        match checked_pow(q, m) {
            Some(t) if t <= MAX_LOOKUP => Ok(t as usize),
            _ => Err(Error::Unsupported(format!(
                "q^m = {q}^{m} is too large for a point table"
            ))),
        }
    }

    /// Accepts any list of pairwise independent nonzero columns covering the
    /// whole projective space.
    pub fn from_columns(field: Field, m: usize, columns: Vec<Vec<u8>>) -> Result<ProjectiveOrder> {
        let q = field.q();
        let total = Self::table_size(q, m)?;
        let expected = (total - 1) / (q as usize - 1);
        if columns.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: columns.len(),
            });
        }
        let mut lookup = vec![(u32::MAX, 0u8); total];
        for (i, col) in columns.iter().enumerate() {
            if col.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    found: col.len(),
                });
            }
            for &s in col {
                field.check_symbol(s as u32)?;
            }
            if col.iter().all(|&s| s == 0) {
                return Err(Error::ZeroVector);
            }
            for alpha in field.nonzero() {
                let z: Vec<u8> = col.iter().map(|&s| field.mul(alpha, s)).collect();
                let slot = &mut lookup[vector_value(q, &z)];
                if slot.0 != u32::MAX {
                    return Err(Error::DegenerateGeometry("columns are not pairwise independent"));
                }
                *slot = (i as u32, alpha);
            }
        }
        Ok(ProjectiveOrder {
            field,
            m,
            points: columns,
            lookup,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Column of the 1-based point `i`.
    pub fn point(&self, i: usize) -> &[u8] {
        &self.points[i - 1]
    }

    pub fn points(&self) -> &[Vec<u8>] {
        &self.points
    }

    fn check_point(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.points.len() {
            return Err(Error::InvalidPoint {
                index: i,
                points: self.points.len(),
            });
        }
        Ok(())
    }

    /// The unique `(point, alpha)` with `z = alpha · h_point`.
    pub fn decompose(&self, z: &[u8]) -> Result<(usize, u8)> {
        if z.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: z.len(),
            });
        }
        if z.iter().all(|&s| s == 0) {
            return Err(Error::ZeroVector);
        }
        let (i, alpha) = self.lookup[vector_value(self.field.q(), z)];
        Ok((i as usize + 1, alpha))
    }

    fn combination(&self, terms: &[(u8, usize)]) -> Vec<u8> {
        let f = &self.field;
        let mut z = vec![0u8; self.m];
        for &(alpha, i) in terms {
            for (zz, &h) in z.iter_mut().zip(self.point(i)) {
                *zz = f.add(*zz, f.mul(alpha, h));
            }
        }
        z
    }

    /// The `q + 1` points of the line through `x` and `y`, ascending.
    pub fn line_points(&self, x: usize, y: usize) -> Result<Vec<usize>> {
        self.check_point(x)?;
        self.check_point(y)?;
        if x == y {
            return Err(Error::DegenerateGeometry("a line needs two distinct points"));
        }
        let q = self.field.q() as u8;
        let mut pts = BTreeSet::new();
        for a in 0..q {
            for b in 0..q {
                if a == 0 && b == 0 {
                    continue;
                }
                pts.insert(self.decompose(&self.combination(&[(a, x), (b, y)]))?.0);
            }
        }
        Ok(pts.into_iter().collect())
    }

    /// The `q² + q + 1` points of the plane spanned by three non-collinear points.
    pub fn plane_points(&self, x: usize, y: usize, z: usize) -> Result<Vec<usize>> {
        let line = self.line_points(x, y)?;
        self.check_point(z)?;
        if line.contains(&z) {
            return Err(Error::DegenerateGeometry("plane points are collinear"));
        }
        let q = self.field.q() as u8;
        let mut pts = BTreeSet::new();
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    if a == 0 && b == 0 && c == 0 {
                        continue;
                    }
                    pts.insert(self.decompose(&self.combination(&[(a, x), (b, y), (c, z)]))?.0);
                }
            }
        }
        Ok(pts.into_iter().collect())
    }

    /// The `(n - 1)/q` lines through `i`, ordered by their smallest other point.
    pub fn pencil(&self, i: usize) -> Result<Vec<Vec<usize>>> {
        self.check_point(i)?;
        let n = self.points.len();
        let mut covered = vec![false; n + 1];
        covered[i] = true;
        let mut lines = Vec::new();
        for j in 1..=n {
            if covered[j] {
                continue;
            }
            let line = self.line_points(i, j)?;
            for &p in &line {
                covered[p] = true;
            }
            lines.push(line);
        }
        Ok(lines)
    }

    /// Points `i` with `w · h_i = 0`, ascending.
    pub fn hyperplane_points(&self, w: &[u8]) -> Result<Vec<usize>> {
        if w.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                found: w.len(),
            });
        }
        if w.iter().all(|&s| s == 0) {
            return Err(Error::ZeroVector);
        }
        let f = &self.field;
        Ok((1..=self.points.len())
            .filter(|&i| {
                self.point(i)
                    .iter()
                    .zip(w)
                    .fold(0, |acc, (&h, &c)| f.add(acc, f.mul(h, c)))
                    == 0
            })
            .collect())
    }
}

/// Result of decoding a word to its nearest Hamming codeword.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: FqVector,
    /// 1-based coordinate and magnitude `alpha` of the error `alpha · e_i`.
    pub correction: Option<(usize, u8)>,
}

/// A q-ary Hamming code with parity-check columns in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HammingCode {
    order: ProjectiveOrder,
    parity: FqMatrix,
    generator: FqMatrix,
    distinguished: Vec<usize>,
}

impl HammingCode {
    /// `H_{q,m}` with columns in canonical projective order.
    pub fn build(q: u32, m: usize) -> Result<HammingCode> {
        if m < 2 {
            return Err(Error::Unsupported(format!("Hamming codes need m >= 2, got m = {m}")));
        }
        HammingCode::over(Field::with_order(q)?, m)
    }

    /// Canonical `H_{q,m}` over a given field.
    pub fn over(field: Field, m: usize) -> Result<HammingCode> {
        if m < 2 {
            return Err(Error::Unsupported(format!("Hamming codes need m >= 2, got m = {m}")));
        }
        HammingCode::from_order(ProjectiveOrder::canonical(field, m)?)
    }

    /// `H_{q,m}` whose last `(q^{m-1} - 1)/(q - 1)` columns form the hyperplane
    /// of points with top entry 0. Restricted to that hyperplane the columns are
    /// those of canonical `H_{q,m-1}`, in the same order.
    pub fn with_hyperplane_last(field: Field, m: usize) -> Result<HammingCode> {
        if m < 2 {
            return Err(Error::Unsupported(format!("Hamming codes need m >= 2, got m = {m}")));
        }
        let canonical = ProjectiveOrder::canonical(field.clone(), m)?;
        let (hyper, off): (Vec<Vec<u8>>, Vec<Vec<u8>>) = canonical.points.iter().cloned().partition(|p| p[0] == 0);
        let mut cols = off;
        cols.extend(hyper);
        HammingCode::from_order(ProjectiveOrder::from_columns(field, m, cols)?)
    }

    pub fn from_order(order: ProjectiveOrder) -> Result<HammingCode> {
        let (m, n) = (order.m(), order.len());
        if m < 2 {
            return Err(Error::Unsupported("Hamming codes need m >= 2".into()));
        }
        let field = order.field().clone();
        let mut parity = FqMatrix::zeros(field.clone(), m, n);
        for (c, col) in order.points().iter().enumerate() {
            for (r, &s) in col.iter().enumerate() {
                parity.set(r, c, s);
            }
        }
        let generator = parity.kernel();
        let distinguished = (0..m)
            .map(|j| {
                let mut e = vec![0u8; m];
                e[j] = 1;
                order.decompose(&e).map(|(i, _)| i)
            })
            .collect::<Result<_>>()?;
        Ok(HammingCode {
            order,
            parity,
            generator,
            distinguished,
        })
    }

    /// Uses the columns of `h` as given.
    pub fn from_parity_check(h: &FqMatrix) -> Result<HammingCode> {
        let cols = (0..h.cols()).map(|c| h.column(c)).collect();
        HammingCode::from_order(ProjectiveOrder::from_columns(h.field().clone(), h.rows(), cols)?)
    }

    /// Recovers the parity-check matrix of a linear 1-perfect code given as a
    /// word list, keeping its coordinate order.
    pub fn from_code(code: &ExplicitCode) -> Result<HammingCode> {
        let basis = code.to_matrix().row_reduced_basis();
        let k = basis.rows();
        let q = code.q();
        if checked_pow(q, k) != Some(code.len() as u128) || !code.contains(&FqVector::zeros(code.n())) {
            return Err(Error::Precondition("code is not linear".into()));
        }
        let h = basis.kernel();
        let hc = HammingCode::from_parity_check(&h)?;
        if code.iter().any(|w| !hc.contains(w)) {
            return Err(Error::Consistency("recovered parity check rejects a codeword".into()));
        }
        Ok(hc)
    }

    pub fn field(&self) -> &Field {
        self.order.field()
    }

    pub fn q(&self) -> u32 {
        self.field().q()
    }

    pub fn m(&self) -> usize {
        self.order.m()
    }

    pub fn n(&self) -> usize {
        self.order.len()
    }

    pub fn dimension(&self) -> usize {
        self.n() - self.m()
    }

    pub fn order(&self) -> &ProjectiveOrder {
        &self.order
    }

    pub fn parity_check(&self) -> &FqMatrix {
        &self.parity
    }

    pub fn generator(&self) -> &FqMatrix {
        &self.generator
    }

    /// 1-based coordinates whose columns are multiples of `e_1, ..., e_m`.
    pub fn distinguished(&self) -> &[usize] {
        &self.distinguished
    }

    pub fn syndrome(&self, x: &FqVector) -> Result<Vec<u8>> {
        self.parity.mul_vec(x)
    }

    pub fn contains(&self, x: &FqVector) -> bool {
        x.len() == self.n() && self.syndrome(x).map(|s| s.iter().all(|&v| v == 0)).unwrap_or(false)
    }

    /// Nearest codeword; with `s = H xᵀ = alpha · h_i` the correction is
    /// `x - alpha · e_i`.
    pub fn syndrome_decode(&self, x: &FqVector) -> Result<Decoded> {
        let s = self.syndrome(x)?;
        if s.iter().all(|&v| v == 0) {
            return Ok(Decoded {
                codeword: x.clone(),
                correction: None,
            });
        }
        let (i, alpha) = self.order.decompose(&s)?;
        let f = self.field();
        let mut c = x.clone();
        c.set(i - 1, f.sub(x.get(i - 1), alpha));
        Ok(Decoded {
            codeword: c,
            correction: Some((i, alpha)),
        })
    }

    /// `q^{n-m}` when it fits.
    pub fn size(&self) -> Option<u128> {
        checked_pow(self.q(), self.dimension())
    }

    /// All codewords, refused above `cap`.
    pub fn codewords(&self, cap: u128) -> Result<ExplicitCode> {
        let size = self.size().unwrap_or(u128::MAX);
        if size > cap {
            return Err(Error::CapExceeded {
                what: "Hamming code enumeration",
                requested: size,
                cap,
            });
        }
        let mut words = Vec::with_capacity(size as usize);
        for_each_coset_word(&self.generator, &FqVector::zeros(self.n()), |w| words.push(w.clone()));
        ExplicitCode::new(self.field().clone(), self.n(), words)
    }

    /// Basis of the subcode supported on a line of the geometry.
    pub fn line_subcode(&self, line: &[usize]) -> Result<FqMatrix> {
        if line.len() < 2 || self.order.line_points(line[0], line[1])? != sorted(line) {
            return Err(Error::DegenerateGeometry("not a line of the geometry"));
        }
        let local = self
            .parity
            .select_columns(&line.iter().map(|&i| i - 1).collect::<Vec<_>>());
        let k = local.kernel();
        let mut basis = FqMatrix::zeros(self.field().clone(), k.rows(), self.n());
        for r in 0..k.rows() {
            for (c, &i) in line.iter().enumerate() {
                basis.set(r, i - 1, k.get(r, c));
            }
        }
        Ok(basis)
    }
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}
