use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;

use super::check_cap;
use crate::components::{admissible_check, i_components_explicit, principal_basis, Admissibility, PrincipalComponent};
use crate::error::{Error, Result};
use crate::fqla::io::{header_usize, parse_header, parse_symbols, read_matrix_body, write_matrix_body};
use crate::fqla::{coset_words, ExplicitCode, FqMatrix, FqVector, RowSpace};
use crate::gf::FieldPermutation;
use crate::hamming::HammingCode;

/// One block to switch in an explicit code.
#[derive(Clone, Debug)]
pub struct SwitchPart {
    /// Words of the block; each must be a codeword.
    pub block: ExplicitCode,
    pub i: usize,
    pub sigma: FieldPermutation,
}

/// Replaces every block by its image under `σ_s` at coordinate `i_s`.
///
/// Blocks must be disjoint i-components. For Hamming codes a block is
/// accepted when it is a whole coset of `R_i`; otherwise the graph
/// components at `i` are computed.
pub fn switch_family_explicit(code: &ExplicitCode, parts: &[SwitchPart]) -> Result<ExplicitCode> {
    let mut owner: Vec<Option<usize>> = vec![None; code.len()];
    let mut indices = Vec::with_capacity(parts.len());
    for (s, part) in parts.iter().enumerate() {
        if part.block.n() != code.n() {
            return Err(Error::LengthMismatch {
                expected: code.n(),
                found: part.block.n(),
            });
        }
        if part.i == 0 || part.i > code.n() {
            return Err(Error::InvalidCoordinate {
                coordinate: part.i,
                n: code.n(),
            });
        }
        if part.sigma.table().len() != code.q() as usize {
            return Err(Error::LengthMismatch {
                expected: code.q() as usize,
                found: part.sigma.table().len(),
            });
        }
        let mut idx = Vec::with_capacity(part.block.len());
        for w in part.block.iter() {
            let j = code.index_of(w).ok_or(Error::NotAComponent(s))?;
            if let Some(r) = owner[j] {
                return Err(Error::OverlappingBlocks(r, s));
            }
            owner[j] = Some(s);
            idx.push(j);
        }
        indices.push(idx);
    }

    let hamming = HammingCode::from_code(code).ok().map(Arc::new);
    let mut graph_cache: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
    for (s, part) in parts.iter().enumerate() {
        let valid = match &hamming {
            Some(h) => {
                let r = principal_basis(h, part.i)?;
                let rep = r.span().representative(&part.block.words()[0]);
                Some(part.block.len() as u128) == r.size()
                    && part.block.iter().all(|w| r.span().representative(w) == rep)
            }
            None => {
                if let std::collections::btree_map::Entry::Vacant(e) = graph_cache.entry(part.i) {
                    e.insert(i_components_explicit(code, part.i)?.blocks);
                }
                graph_cache[&part.i].contains(&indices[s])
            }
        };
        if !valid || part.block.is_empty() {
            return Err(Error::NotAComponent(s));
        }
    }

    let mut words: Vec<FqVector> = code
        .iter()
        .zip(&owner)
        .filter(|(_, o)| o.is_none())
        .map(|(w, _)| w.clone())
        .collect();
    for part in parts {
        words.extend(part.block.iter().map(|w| w.permute_at(part.i, &part.sigma)));
    }
    let out = ExplicitCode::new(code.field().clone(), code.n(), words)?;
    if out.len() != code.len() {
        return Err(Error::Consistency(format!(
            "switched code has {} words, expected {}",
            out.len(),
            code.len()
        )));
    }
    Ok(out)
}

/// A shifted principal component together with the permutation applied to it.
#[derive(Clone, Debug)]
pub struct SwitchedPart {
    pub component: PrincipalComponent,
    pub sigma: FieldPermutation,
}

/// `(H \ ⋃ (R_s + c_s)) ∪ ⋃ σ_s(R_s + c_s)` for a Hamming code `H` and an
/// admissible family, held without listing its words.
#[derive(Clone, Debug)]
pub struct ImplicitSwitchedCode {
    base: Arc<HammingCode>,
    parts: Vec<SwitchedPart>,
    inverses: Vec<FieldPermutation>,
    syndromes: Vec<Vec<u8>>,
}

impl ImplicitSwitchedCode {
    /// Checks that the parts share `base`, that every σ acts on the right
    /// field, and that the family is admissible.
    pub fn new(base: Arc<HammingCode>, parts: Vec<SwitchedPart>) -> Result<ImplicitSwitchedCode> {
        for p in &parts {
            if !Arc::ptr_eq(p.component.code(), &base) && **p.component.code() != *base {
                return Err(Error::Precondition(
                    "component belongs to a different Hamming code".into(),
                ));
            }
            if p.sigma.table().len() != base.q() as usize {
                return Err(Error::LengthMismatch {
                    expected: base.q() as usize,
                    found: p.sigma.table().len(),
                });
            }
        }
        let family: Vec<PrincipalComponent> = parts.iter().map(|p| p.component.clone()).collect();
        if let Admissibility::Violation { r, s, .. } = admissible_check(&family)? {
            return Err(Error::NotAdmissible { r, s });
        }
        Ok(ImplicitSwitchedCode::from_parts_unchecked(base, parts))
    }

    /// Skips every check. Intended for fault injection in verification tests.
    pub fn from_parts_unchecked(base: Arc<HammingCode>, parts: Vec<SwitchedPart>) -> ImplicitSwitchedCode {
        let inverses = parts.iter().map(|p| p.sigma.inverse()).collect();
        let syndromes = parts
            .iter()
            .map(|p| base.syndrome(p.component.shift()).expect("shift has the code length"))
            .collect();
        ImplicitSwitchedCode {
            base,
            parts,
            inverses,
            syndromes,
        }
    }

    pub fn base(&self) -> &Arc<HammingCode> {
        &self.base
    }

    pub fn parts(&self) -> &[SwitchedPart] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn q(&self) -> u32 {
        self.base.q()
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    /// Number of words, `q^{n-m}`, when it fits.
    pub fn size(&self) -> Option<u128> {
        self.base.size()
    }

    /// Membership test.
    ///
    /// `x` is a word when undoing some `σ_s` at `i_s` lands in `R_s + c_s`, or
    /// when `x` is a Hamming codeword outside every removed coset.
    pub fn contains(&self, x: &FqVector) -> Result<bool> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                found: x.len(),
            });
        }
        Ok(self.contains_with_syndrome(x, &self.base.syndrome(x)?))
    }

    /// Which switched coset holds `x`, if any.
    pub fn switched_part_of(&self, x: &FqVector) -> Option<usize> {
        let syn = self.base.syndrome(x).ok()?;
        self.switched_part_with_syndrome(x, &syn)
    }

    fn switched_part_with_syndrome(&self, x: &FqVector, syn: &[u8]) -> Option<usize> {
        let f = self.base.field();
        for (s, part) in self.parts.iter().enumerate() {
            let i = part.component.coordinate();
            let xi = x.get(i - 1);
            let pre = self.inverses[s].apply(xi);
            let delta = f.sub(pre, xi);
            let h = self.base.order().point(i);
            let matches = syn
                .iter()
                .zip(h)
                .zip(&self.syndromes[s])
                .all(|((&a, &hh), &t)| f.add(a, f.mul(delta, hh)) == t);
            if matches {
                let mut y = x.clone();
                y.set(i - 1, pre);
                if part.component.contains(&y) {
                    return Some(s);
                }
            }
        }
        None
    }

    pub(crate) fn contains_with_syndrome(&self, x: &FqVector, syn: &[u8]) -> bool {
        if self.switched_part_with_syndrome(x, syn).is_some() {
            return true;
        }
        syn.iter().all(|&s| s == 0)
            && !self
                .parts
                .iter()
                .zip(&self.syndromes)
                .any(|(p, t)| t.iter().all(|&s| s == 0) && p.component.contains(x))
    }

    /// Number of words within distance 1 of `x`.
    pub fn ball_count(&self, x: &FqVector) -> Result<usize> {
        let syn = self.base.syndrome(x)?;
        let f = self.base.field();
        let mut count = self.contains_with_syndrome(x, &syn) as usize;
        for j in 0..self.n() {
            let h = self.base.order().point(j + 1);
            for alpha in f.nonzero() {
                let mut y = x.clone();
                y.set(j, f.add(x.get(j), alpha));
                let s: Vec<u8> = syn.iter().zip(h).map(|(&a, &b)| f.add(a, f.mul(alpha, b))).collect();
                count += self.contains_with_syndrome(&y, &s) as usize;
            }
        }
        Ok(count)
    }

    /// Lists every word, refused when `q^{n-m}` exceeds `cap`.
    pub fn enumerate(&self, cap: u128) -> Result<ExplicitCode> {
        check_cap("switched code enumeration", self.size(), cap)?;
        let zero = FqVector::zeros(self.n());
        let hamming = coset_words(self.base.generator(), &zero);
        let mut words: Vec<FqVector> = hamming
            .into_par_iter()
            .filter(|w| !self.parts.iter().any(|p| p.component.contains(w)))
            .collect();
        for p in &self.parts {
            let i = p.component.coordinate();
            words.extend(p.component.words().iter().map(|w| w.permute_at(i, &p.sigma)));
        }
        ExplicitCode::new(self.base.field().clone(), self.n(), words)
    }
}

pub fn implicit_membership(code: &ImplicitSwitchedCode, x: &FqVector) -> Result<bool> {
    code.contains(x)
}

pub fn implicit_enumerate(code: &ImplicitSwitchedCode, cap: u128) -> Result<ExplicitCode> {
    code.enumerate(cap)
}

pub const SWITCHED_MAGIC: &str = "# perfect-forge switched v1";

/// Text description: the parity-check matrix, then per part its coordinate,
/// permutation, shift and component basis.
///
/// ```text
/// # perfect-forge switched v1
/// parts=1
/// parity
/// q=2 p=2 k=1 rows=3 cols=7
/// …
/// part i=7 sigma=1,0
/// shift
/// 0 0 0 0 0 0 0
/// basis
/// q=2 p=2 k=1 rows=3 cols=7
/// …
/// ```
pub fn write_switched(code: &ImplicitSwitchedCode) -> String {
    let mut s = String::new();
    writeln!(s, "{SWITCHED_MAGIC}").unwrap();
    writeln!(s, "parts={}", code.parts.len()).unwrap();
    writeln!(s, "parity").unwrap();
    write_matrix_body(&mut s, code.base.parity_check());
    for p in &code.parts {
        writeln!(s, "part i={} sigma={}", p.component.coordinate(), p.sigma).unwrap();
        writeln!(s, "shift").unwrap();
        writeln!(s, "{}", p.component.shift()).unwrap();
        writeln!(s, "basis").unwrap();
        write_matrix_body(&mut s, p.component.basis());
    }
    s
}

fn expect_line<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, what: &str) -> Result<(usize, &'a str)> {
    let (ln, l) = lines
        .next()
        .ok_or_else(|| Error::parse(0, format!("unexpected end of file, expected {what}")))?;
    Ok((ln, l.trim()))
}

fn expect_tag<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>, tag: &str) -> Result<()> {
    let (ln, l) = expect_line(lines, tag)?;
    if l != tag {
        return Err(Error::parse(ln, format!("expected {tag:?}, found {l:?}")));
    }
    Ok(())
}

/// Reads a description and rebuilds the code, recomputing every component and
/// re-running the admissibility check.
pub fn read_switched(text: &str) -> Result<ImplicitSwitchedCode> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, l)) if l.trim() == SWITCHED_MAGIC => {}
        _ => return Err(Error::parse(1, format!("expected {SWITCHED_MAGIC:?}"))),
    }
    let (hl, header) = expect_line(&mut lines, "parts=")?;
    let count = header_usize(&parse_header(header, hl)?, "parts", hl)?;
    expect_tag(&mut lines, "parity")?;
    let parity = read_matrix_body(&mut lines)?;
    let base = Arc::new(HammingCode::from_parity_check(&parity)?);
    let q = base.q();
    let mut parts = Vec::with_capacity(count);
    for _ in 0..count {
        let (ln, l) = expect_line(&mut lines, "part")?;
        let rest = l
            .strip_prefix("part ")
            .ok_or_else(|| Error::parse(ln, format!("expected a part line, found {l:?}")))?;
        let h = parse_header(rest, ln)?;
        let i = header_usize(&h, "i", ln)?;
        let table: Vec<u32> = h
            .get("sigma")
            .ok_or_else(|| Error::parse(ln, "missing sigma="))?
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| Error::parse(ln, "bad sigma entry")))
            .collect::<Result<_>>()?;
        let sigma = FieldPermutation::new(q, &table)?;
        expect_tag(&mut lines, "shift")?;
        let (sl, sline) = expect_line(&mut lines, "shift vector")?;
        let shift = parse_symbols(base.field(), sline, base.n(), sl)?;
        expect_tag(&mut lines, "basis")?;
        let basis = read_matrix_body(&mut lines)?;
        let component = principal_basis(&base, i)?.with_shift(shift)?;
        if !same_row_space(&basis, component.basis()) {
            return Err(Error::parse(ln, format!("basis of part at {i} does not span R_{i}")));
        }
        parts.push(SwitchedPart { component, sigma });
    }
    ImplicitSwitchedCode::new(base, parts)
}

fn same_row_space(a: &FqMatrix, b: &FqMatrix) -> bool {
    if a.cols() != b.cols() || a.rank() != b.rank() {
        return false;
    }
    let span = RowSpace::from_matrix(b);
    (0..a.rows()).all(|r| span.contains(&a.row(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::i_sigma_components_explicit;
    use crate::gf::Field;
    use crate::verify::verify_perfect;

    fn example_code() -> ExplicitCode {
        let f = Field::prime(2).unwrap();
        let mut words = Vec::new();
        for u in 0..8u64 {
            let u = FqVector::from_rank_index(u, 2, 3);
            for v in [[0u8, 0, 0], [1, 1, 1]] {
                let v = FqVector::from_symbols(&v);
                words.push(u.concat(&u.add(&f, &v)).push(u.p_sum(&f)));
            }
        }
        ExplicitCode::new(f, 7, words).unwrap()
    }

    #[test]
    fn switching_the_example_component() {
        let c = example_code();
        let p = i_components_explicit(&c, 7).unwrap();
        let block = p.block_code(&c, 0);
        let swap = FieldPermutation::swap(2);
        let out = switch_family_explicit(
            &c,
            &[SwitchPart {
                block: block.clone(),
                i: 7,
                sigma: swap,
            }],
        )
        .unwrap();
        assert!(verify_perfect(&out).unwrap().passed());
        let f = c.field().clone();
        let e7 = FqVector::unit(7, 6, 1);
        let mut expect: Vec<FqVector> = c.iter().filter(|w| !block.contains(w)).cloned().collect();
        expect.extend(block.iter().map(|w| w.add(&f, &e7)));
        assert_eq!(out, ExplicitCode::new(f, 7, expect).unwrap());
    }

    #[test]
    fn identity_switch_changes_nothing() {
        let c = HammingCode::build(3, 2).unwrap().codewords(100).unwrap();
        let p = i_components_explicit(&c, 2).unwrap();
        let parts: Vec<SwitchPart> = (0..p.len())
            .map(|b| SwitchPart {
                block: p.block_code(&c, b),
                i: 2,
                sigma: FieldPermutation::identity(3),
            })
            .collect();
        assert_eq!(switch_family_explicit(&c, &parts).unwrap(), c);
    }

    #[test]
    fn switch_rejects_bad_families() {
        let c = example_code();
        let p = i_components_explicit(&c, 7).unwrap();
        let block = p.block_code(&c, 0);
        let part = |b: ExplicitCode, i| SwitchPart {
            block: b,
            i,
            sigma: FieldPermutation::swap(2),
        };
        assert!(matches!(
            switch_family_explicit(&c, &[part(block.clone(), 7), part(block.clone(), 7)]),
            Err(Error::OverlappingBlocks(0, 1))
        ));
        let half = ExplicitCode::new(c.field().clone(), 7, block.words()[..4].to_vec()).unwrap();
        assert!(matches!(
            switch_family_explicit(&c, &[part(half, 7)]),
            Err(Error::NotAComponent(0))
        ));
        assert!(matches!(
            switch_family_explicit(&c, &[part(block.clone(), 1)]),
            Err(Error::NotAComponent(0))
        ));
    }

    #[test]
    fn switching_a_nonlinear_code_uses_graph_components() {
        let v = crate::constructions::vasiliev(
            &example_code(),
            &crate::constructions::LambdaFunction::Seeded(3),
            1 << 20,
        )
        .unwrap();
        assert!(HammingCode::from_code(&v).is_err());
        let p = i_components_explicit(&v, 5).unwrap();
        let parts = [SwitchPart {
            block: p.block_code(&v, p.len() - 1),
            i: 5,
            sigma: FieldPermutation::swap(2),
        }];
        let out = switch_family_explicit(&v, &parts).unwrap();
        assert!(verify_perfect(&out).unwrap().passed());
    }

    #[test]
    fn ternary_sigma_component_switch() {
        let c = HammingCode::build(3, 3).unwrap().codewords(1 << 16).unwrap();
        let sigma = FieldPermutation::cycle(3);
        let p = i_sigma_components_explicit(&c, 4, &sigma).unwrap();
        let block = p.block_code(&c, 1);
        let f = c.field().clone();
        let mut words: Vec<FqVector> = c.iter().filter(|w| !block.contains(w)).cloned().collect();
        words.extend(block.iter().map(|w| w.permute_at(4, &sigma)));
        let out = ExplicitCode::new(f, 13, words).unwrap();
        assert!(verify_perfect(&out).unwrap().passed());
    }

    #[test]
    fn empty_family_is_the_hamming_code() {
        let h = Arc::new(HammingCode::build(2, 4).unwrap());
        let code = ImplicitSwitchedCode::new(h.clone(), vec![]).unwrap();
        assert_eq!(code.enumerate(1 << 20).unwrap(), h.codewords(1 << 20).unwrap());
    }

    #[test]
    fn membership_matches_enumeration() {
        let h = Arc::new(HammingCode::build(3, 2).unwrap());
        let code_words = h.codewords(100).unwrap();
        let r1 = principal_basis(&h, 1)
            .unwrap()
            .with_shift(code_words.words()[4].clone())
            .unwrap();
        let code = ImplicitSwitchedCode::new(
            h.clone(),
            vec![SwitchedPart {
                component: r1,
                sigma: FieldPermutation::cycle(3),
            }],
        )
        .unwrap();
        let listed = code.enumerate(100).unwrap();
        assert_eq!(listed.len(), 9);
        for x in 0..81u64 {
            let x = FqVector::from_rank_index(x, 3, 4);
            assert_eq!(code.contains(&x).unwrap(), listed.contains(&x));
            assert_eq!(code.ball_count(&x).unwrap(), 1);
        }
        assert!(code.contains(&FqVector::zeros(3)).is_err());
    }

    #[test]
    fn duplicated_cosets_are_not_admissible() {
        let h = Arc::new(HammingCode::build(2, 3).unwrap());
        let r = principal_basis(&h, 3).unwrap();
        let part = SwitchedPart {
            component: r,
            sigma: FieldPermutation::swap(2),
        };
        assert!(matches!(
            ImplicitSwitchedCode::new(h, vec![part.clone(), part]),
            Err(Error::NotAdmissible { r: 0, s: 1 })
        ));
    }

    #[test]
    fn description_round_trip() {
        let code = crate::constructions::fullrank_code(2, 4, &vec![FieldPermutation::swap(2); 4]).unwrap();
        let text = write_switched(&code);
        let back = read_switched(&text).unwrap();
        assert_eq!(write_switched(&back), text);
        assert_eq!(back.enumerate(1 << 20).unwrap(), code.enumerate(1 << 20).unwrap());
        let broken = text.replacen("part i=", "part j=", 1);
        assert!(read_switched(&broken).is_err());
        assert!(read_switched("# perfect-forge code v1\n").is_err());
    }
}
