//! i-components and (i,σ)-components.
//!
//! Principal components `R_i` of a Hamming code are built from the pencil of
//! lines through `i`. Components of arbitrary explicit codes come from
//! distance graphs and union-find. The module also has exact coset
//! disjointness and admissibility tests for families of shifted components.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fqla::{checked_pow, coset_words, ExplicitCode, FqMatrix, FqVector, RowSpace};
use crate::gf::FieldPermutation;
use crate::hamming::HammingCode;

/// Largest code accepted by the quadratic graph builders.
pub const GRAPH_CAP: usize = 1 << 17;

const ROW_CHUNK: usize = 512;

mod dsu {
    pub struct Dsu {
        parent: Vec<u32>,
        rank: Vec<u8>,
    }

    impl Dsu {
        pub fn new(n: usize) -> Dsu {
            Dsu {
                parent: (0..n as u32).collect(),
                rank: vec![0; n],
            }
        }

        pub fn find(&mut self, mut x: usize) -> usize {
            while self.parent[x] as usize != x {
                let p = self.parent[x] as usize;
                self.parent[x] = self.parent[p];
                x = p;
            }
            x
        }

        pub fn union(&mut self, a: usize, b: usize) {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                return;
            }
            match self.rank[a].cmp(&self.rank[b]) {
                std::cmp::Ordering::Less => self.parent[a] = b as u32,
                std::cmp::Ordering::Greater => self.parent[b] = a as u32,
                std::cmp::Ordering::Equal => {
                    self.parent[b] = a as u32;
                    self.rank[a] += 1;
                }
            }
        }

        /// Classes ordered by smallest member, members ascending.
        pub fn classes(&mut self) -> Vec<Vec<usize>> {
            let n = self.parent.len();
            let mut id = vec![usize::MAX; n];
            let mut out: Vec<Vec<usize>> = Vec::new();
            for x in 0..n {
                let r = self.find(x);
                if id[r] == usize::MAX {
                    id[r] = out.len();
                    out.push(Vec::new());
                }
                out[id[r]].push(x);
            }
            out
        }
    }
}

use dsu::Dsu;

/// A coset `R_i + shift` of the principal i-component of a Hamming code.
#[derive(Clone, Debug)]
pub struct PrincipalComponent {
    code: Arc<HammingCode>,
    i: usize,
    basis: FqMatrix,
    span: RowSpace,
    shift: FqVector,
    rep: FqVector,
}

/// `R_i`: the span of the line subcodes over the pencil of lines through `i`.
///
/// ```
/// use std::sync::Arc;
/// use perfect_forge::components::principal_basis;
/// use perfect_forge::hamming::HammingCode;
///
/// let h = Arc::new(HammingCode::build(2, 4).unwrap());
/// let r = principal_basis(&h, 5).unwrap();
/// assert_eq!(r.dim(), 7);
/// ```
pub fn principal_basis(code: &Arc<HammingCode>, i: usize) -> Result<PrincipalComponent> {
    let n = code.n();
    if i == 0 || i > n {
        return Err(Error::InvalidCoordinate { coordinate: i, n });
    }
    let mut stacked = FqMatrix::zeros(code.field().clone(), 0, n);
    for line in code.order().pencil(i)? {
        stacked = stacked.stack(&code.line_subcode(&line)?)?;
    }
    let basis = stacked.row_reduced_basis();
    let expected = checked_pow(code.q(), code.m() - 1).map(|v| v as usize - 1);
    if Some(basis.rows()) != expected {
        return Err(Error::Consistency(format!(
            "principal component at {i} has dimension {}",
            basis.rows()
        )));
    }
    let span = RowSpace::from_matrix(&basis);
    Ok(PrincipalComponent {
        code: code.clone(),
        i,
        basis,
        span,
        shift: FqVector::zeros(n),
        rep: FqVector::zeros(n),
    })
}

impl PrincipalComponent {
    /// Moves the coset to `R_i + u`; `u` must be a codeword.
    pub fn with_shift(mut self, u: FqVector) -> Result<PrincipalComponent> {
        if u.len() != self.code.n() {
            return Err(Error::LengthMismatch {
                expected: self.code.n(),
                found: u.len(),
            });
        }
        if !self.code.contains(&u) {
            return Err(Error::Precondition("component shift is not a Hamming codeword".into()));
        }
        self.rep = self.span.representative(&u);
        self.shift = u;
        Ok(self)
    }

    /// Like [`with_shift`](Self::with_shift) without the codeword check, for
    /// fault injection.
    pub fn with_shift_unchecked(mut self, u: FqVector) -> PrincipalComponent {
        self.rep = self.span.representative(&u);
        self.shift = u;
        self
    }

    pub fn code(&self) -> &Arc<HammingCode> {
        &self.code
    }

    /// The 1-based coordinate `i`.
    pub fn coordinate(&self) -> usize {
        self.i
    }

    /// Row-reduced basis of `R_i`.
    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn span(&self) -> &RowSpace {
        &self.span
    }

    /// The shift as supplied.
    pub fn shift(&self) -> &FqVector {
        &self.shift
    }

    /// Canonical coset representative: zero at the pivots of the basis.
    pub fn representative(&self) -> &FqVector {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn size(&self) -> Option<u128> {
        checked_pow(self.code.q(), self.dim())
    }

    pub fn contains(&self, x: &FqVector) -> bool {
        x.len() == self.rep.len() && self.span.representative(x) == self.rep
    }

    /// All words of the coset.
    pub fn words(&self) -> Vec<FqVector> {
        coset_words(&self.basis, &self.rep)
    }

    fn same_code(&self, other: &PrincipalComponent) -> bool {
        Arc::ptr_eq(&self.code, &other.code) || *self.code == *other.code
    }
}

/// A partition of an explicit code into blocks of word indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentPartition {
    pub i: usize,
    pub sigma: Option<FieldPermutation>,
    /// Indices into the code's sorted words; blocks ordered by first member.
    pub blocks: Vec<Vec<usize>>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    pub fn block_code(&self, code: &ExplicitCode, b: usize) -> ExplicitCode {
        let words = self.blocks[b].iter().map(|&j| code.words()[j].clone()).collect();
        ExplicitCode::new(code.field().clone(), code.n(), words).expect("subset of a valid code")
    }

    /// True when every block lies inside a single block of `coarser`.
    pub fn refines(&self, coarser: &ComponentPartition) -> bool {
        let total: usize = coarser.blocks.iter().map(Vec::len).sum();
        let mut owner = vec![usize::MAX; total];
        for (b, blk) in coarser.blocks.iter().enumerate() {
            for &j in blk {
                if j < total {
                    owner[j] = b;
                }
            }
        }
        self.blocks
            .iter()
            .all(|blk| blk.iter().all(|&j| j < total && owner[j] == owner[blk[0]]))
    }
}

fn check_graph_input(code: &ExplicitCode, i: usize) -> Result<()> {
    if i == 0 || i > code.n() {
        return Err(Error::InvalidCoordinate {
            coordinate: i,
            n: code.n(),
        });
    }
    if code.len() < 2 {
        return Err(Error::Precondition(
            "component graphs need at least two codewords".into(),
        ));
    }
    if code.len() > GRAPH_CAP {
        return Err(Error::CapExceeded {
            what: "component graph vertices",
            requested: code.len() as u128,
            cap: GRAPH_CAP as u128,
        });
    }
    Ok(())
}

/// Unions `a` and `b` whenever `adjacent(a, b)` for `a < b`. Rows are scanned
/// in parallel chunks and merged in index order.
fn connect(n: usize, adjacent: impl Fn(usize, usize) -> bool + Sync) -> Dsu {
    let mut dsu = Dsu::new(n);
    for start in (0..n).step_by(ROW_CHUNK) {
        let end = (start + ROW_CHUNK).min(n);
        let edges: Vec<Vec<u32>> = (start..end)
            .into_par_iter()
            .map(|a| (a + 1..n).filter(|&b| adjacent(a, b)).map(|b| b as u32).collect())
            .collect();
        for (a, nbrs) in (start..end).zip(edges) {
            for b in nbrs {
                dsu.union(a, b as usize);
            }
        }
    }
    dsu
}

/// i-components: connected components of the minimum-distance graph of the
/// code punctured at `i`. Words that collide after puncturing are adjacent.
///
/// ```
/// use perfect_forge::components::i_components_explicit;
/// use perfect_forge::hamming::HammingCode;
///
/// let c = HammingCode::build(2, 3).unwrap().codewords(1 << 10).unwrap();
/// let p = i_components_explicit(&c, 4).unwrap();
/// assert_eq!(p.sizes(), vec![8, 8]);
/// ```
pub fn i_components_explicit(code: &ExplicitCode, i: usize) -> Result<ComponentPartition> {
    check_graph_input(code, i)?;
    let punct: Vec<FqVector> = code.iter().map(|w| w.puncture(i)).collect();
    let n = punct.len();
    let d = (0..n)
        .into_par_iter()
        .filter_map(|a| {
            (a + 1..n)
                .map(|b| punct[a].distance_unchecked(&punct[b]))
                .filter(|&d| d > 0)
                .min()
        })
        .min();
    let mut dsu = connect(n, |a, b| {
        let dist = punct[a].distance_unchecked(&punct[b]);
        dist == 0 || Some(dist) == d
    });
    Ok(ComponentPartition {
        i,
        sigma: None,
        blocks: dsu.classes(),
    })
}

/// (i,σ)-components from the bipartite distance-2 graph between `C` and
/// `C(i,σ)`. Each word is identified with its own image in `C(i,σ)`, so a
/// block collects every codeword met by a component on either side.
pub fn i_sigma_components_explicit(
    code: &ExplicitCode,
    i: usize,
    sigma: &FieldPermutation,
) -> Result<ComponentPartition> {
    check_graph_input(code, i)?;
    check_sigma(code, sigma)?;
    let words = code.words();
    let images: Vec<FqVector> = words.iter().map(|w| w.permute_at(i, sigma)).collect();
    let (n, q) = (code.n(), code.q() as usize);
    let sphere = n * (n - 1) / 2 * (q - 1) * (q - 1);
    let mut dsu = if sphere < words.len() {
        // list the radius-2 sphere around each image instead of scanning all pairs
        let f = code.field();
        let edges: Vec<Vec<usize>> = images
            .par_iter()
            .map(|y| {
                let mut out = Vec::new();
                for j in 0..n {
                    for k in j + 1..n {
                        for a in f.nonzero() {
                            for b in f.nonzero() {
                                let mut x = y.clone();
                                x.set(j, f.add(y.get(j), a));
                                x.set(k, f.add(y.get(k), b));
                                out.extend(code.index_of(&x));
                            }
                        }
                    }
                }
                out
            })
            .collect();
        let mut dsu = Dsu::new(words.len());
        for (b, nbrs) in edges.into_iter().enumerate() {
            for a in nbrs {
                dsu.union(a, b);
            }
        }
        dsu
    } else {
        connect(words.len(), |a, b| {
            words[a].distance_unchecked(&images[b]) == 2 || words[b].distance_unchecked(&images[a]) == 2
        })
    };
    Ok(ComponentPartition {
        i,
        sigma: Some(sigma.clone()),
        blocks: dsu.classes(),
    })
}

fn check_sigma(code: &ExplicitCode, sigma: &FieldPermutation) -> Result<()> {
    if sigma.table().len() != code.q() as usize {
        return Err(Error::LengthMismatch {
            expected: code.q() as usize,
            found: sigma.table().len(),
        });
    }
    Ok(())
}

/// Smallest set containing `seed` and closed under `y ↦ {x ∈ C : d(x, y(i,σ)) = 2}`.
pub fn closure_from(code: &ExplicitCode, i: usize, sigma: &FieldPermutation, seed: usize) -> Result<Vec<usize>> {
    check_graph_input(code, i)?;
    check_sigma(code, sigma)?;
    if seed >= code.len() {
        return Err(Error::Precondition(format!("seed index {seed} outside the code")));
    }
    let words = code.words();
    let mut seen = vec![false; words.len()];
    seen[seed] = true;
    let mut stack = vec![seed];
    while let Some(y) = stack.pop() {
        let image = words[y].permute_at(i, sigma);
        for (x, w) in words.iter().enumerate() {
            if !seen[x] && w.distance_unchecked(&image) == 2 {
                seen[x] = true;
                stack.push(x);
            }
        }
    }
    Ok((0..words.len()).filter(|&x| seen[x]).collect())
}

/// Groups the words of `code` by their coset of `R_i`.
pub fn principal_coset_blocks(code: &ExplicitCode, component: &PrincipalComponent) -> Result<ComponentPartition> {
    if code.n() != component.code.n() {
        return Err(Error::LengthMismatch {
            expected: component.code.n(),
            found: code.n(),
        });
    }
    let reps: Vec<FqVector> = code.iter().map(|w| component.span.representative(w)).collect();
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| reps[a].cmp(&reps[b]).then(a.cmp(&b)));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for (k, &j) in order.iter().enumerate() {
        if k == 0 || reps[order[k - 1]] != reps[j] {
            blocks.push(Vec::new());
        }
        blocks.last_mut().unwrap().push(j);
    }
    blocks.sort_by_key(|b| b[0]);
    Ok(ComponentPartition {
        i: component.i,
        sigma: None,
        blocks,
    })
}

/// Whether two component cosets are disjoint: `R_a + u` and `R_b + v` meet
/// exactly when `u - v ∈ R_a + R_b`.
pub fn coset_disjoint(a: &PrincipalComponent, b: &PrincipalComponent) -> Result<bool> {
    if !a.same_code(b) {
        return Err(Error::Precondition(
            "components belong to different Hamming codes".into(),
        ));
    }
    let f = a.code.field();
    let diff = a.shift.sub(f, &b.shift);
    if a.i == b.i {
        return Ok(!a.span.contains(&diff));
    }
    let mut sum = a.span.clone();
    for r in 0..b.basis.rows() {
        sum.insert(&b.basis.row(r));
    }
    Ok(!sum.contains(&diff))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Admissibility {
    Admissible,
    /// First intersecting pair: 0-based family positions and their coordinates.
    Violation {
        r: usize,
        s: usize,
        coordinates: (usize, usize),
    },
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Admissibility::Admissible)
    }
}

/// Pairwise disjointness of a family, pairs scanned as (0,1), (0,2), …, (1,2), ….
pub fn admissible_check(family: &[PrincipalComponent]) -> Result<Admissibility> {
    for r in 0..family.len() {
        for s in r + 1..family.len() {
            if !coset_disjoint(&family[r], &family[s])? {
                return Ok(Admissibility::Violation {
                    r,
                    s,
                    coordinates: (family[r].i, family[s].i),
                });
            }
        }
    }
    Ok(Admissibility::Admissible)
}

/// Which incidence property to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructuralMode {
    /// For `u ∈ R_i`: every support point `x ≠ i` has another support point on `l_ix`.
    Line { i: usize },
    /// For `u ∈ R_i + R_j`: every support point `x` off `l_ij` has another
    /// support point in the plane `P_ijx` besides `i`, `j`, `x`.
    Plane { i: usize, j: usize },
}

/// Evaluates the incidence property of `u` selected by `mode`.
pub fn structural_predicate(code: &Arc<HammingCode>, u: &FqVector, mode: StructuralMode) -> Result<bool> {
    if u.len() != code.n() {
        return Err(Error::LengthMismatch {
            expected: code.n(),
            found: u.len(),
        });
    }
    let order = code.order();
    let support = u.support();
    let nonzero = |y: usize| u.get(y - 1) != 0;
    match mode {
        StructuralMode::Line { i } => {
            let ri = principal_basis(code, i)?;
            if !ri.span.contains(u) {
                return Err(Error::Precondition(format!("vector is not in R_{i}")));
            }
            for &x in support.iter().filter(|&&x| x != i) {
                let line = order.line_points(i, x)?;
                if !line.iter().any(|&y| y != i && y != x && nonzero(y)) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        StructuralMode::Plane { i, j } => {
            if i == j {
                return Err(Error::Precondition("plane property needs i != j".into()));
            }
            let ri = principal_basis(code, i)?;
            let rj = principal_basis(code, j)?;
            let mut sum = ri.span.clone();
            for r in 0..rj.basis.rows() {
                sum.insert(&rj.basis.row(r));
            }
            if !sum.contains(u) {
                return Err(Error::Precondition(format!("vector is not in R_{i} + R_{j}")));
            }
            let lij = order.line_points(i, j)?;
            for &x in support.iter().filter(|x| !lij.contains(x)) {
                let plane = order.plane_points(i, j, x)?;
                if !plane.iter().any(|&y| y != i && y != j && y != x && nonzero(y)) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}
