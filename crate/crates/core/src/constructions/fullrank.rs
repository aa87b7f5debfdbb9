use std::sync::Arc;

use super::{ImplicitSwitchedCode, SwitchedPart};
use crate::components::principal_basis;
use crate::error::{Error, Result};
use crate::fqla::FqVector;
use crate::gf::{Field, FieldPermutation};
use crate::hamming::HammingCode;

/// Sign convention for the full-rank shift vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// All terms added; valid over fields of characteristic 2.
    Char2,
    /// Mixed signs; valid over every field.
    General,
}

impl Variant {
    pub fn for_field(field: &Field) -> Variant {
        if field.characteristic() == 2 {
            Variant::Char2
        } else {
            Variant::General
        }
    }
}

/// `ξ(z) = α·e_i` for the unique point `i` and scalar `α` with `z = α·h_i`.
pub fn xi_map(code: &HammingCode, z: &FqVector) -> Result<FqVector> {
    if z.len() != code.m() {
        return Err(Error::LengthMismatch {
            expected: code.m(),
            found: z.len(),
        });
    }
    let (i, alpha) = code.order().decompose(&z.symbols())?;
    Ok(FqVector::unit(code.n(), i - 1, alpha))
}

/// A signed combination `Σ ± h_j` over `j = 1..=m`, as coefficients.
type Combo = Vec<(usize, bool)>;

fn terms(j: usize, variant: Variant) -> Vec<(bool, Combo)> {
    let pos = |ks: &[usize]| ks.iter().map(|&k| (k, true)).collect::<Combo>();
    let signed = |ks: &[(usize, bool)]| ks.to_vec();
    let minus = variant == Variant::General;
    match j {
        1 => vec![
            (true, pos(&[1])),
            (true, pos(&[1, 2, 3])),
            (!minus, signed(&[(1, true), (2, true), (4, !minus)])),
            (!minus, pos(&[1, 3, 4])),
        ],
        2 => vec![
            (true, pos(&[1])),
            (true, pos(&[2])),
            (!minus, signed(&[(1, true), (3, !minus), (4, !minus)])),
            (!minus, pos(&[2, 3, 4])),
        ],
        4 => vec![
            (true, pos(&[1])),
            (!minus, pos(&[2])),
            (!minus, pos(&[3])),
            (true, pos(&[4])),
            (true, pos(&[1, 2, 3])),
            (!minus, pos(&[1, 2, 4])),
            (!minus, pos(&[1, 3, 4])),
            (true, pos(&[2, 3, 4])),
        ],
        _ => {
            let mut t: Vec<(bool, Combo)> = (1..=j).map(|k| (true, pos(&[k]))).collect();
            if j % 2 == 1 {
                t.push((!minus, (1..=j).map(|k| (k, true)).collect()));
            } else {
                t.push((!minus, (1..=j / 2).map(|k| (k, true)).collect()));
                t.push((!minus, (j / 2 + 1..=j).map(|k| (k, true)).collect()));
            }
            t
        }
    }
}

/// The shift vectors `c_1, …, c_m` of the full-rank family.
///
/// `h_j` is the column at the `j`-th distinguished coordinate. Each `c_j` is
/// checked to be a codeword with symbol 1 at that coordinate.
pub fn fullrank_vectors(code: &HammingCode, variant: Variant) -> Result<Vec<FqVector>> {
    let m = code.m();
    if m < 4 {
        return Err(Error::Unsupported(format!("full-rank family needs m >= 4, got {m}")));
    }
    let f = code.field();
    if variant == Variant::Char2 && f.characteristic() != 2 {
        return Err(Error::Unsupported(format!(
            "characteristic-2 variant over a field of characteristic {}",
            f.characteristic()
        )));
    }
    let cols: Vec<&[u8]> = code.distinguished().iter().map(|&d| code.order().point(d)).collect();
    let mut out = Vec::with_capacity(m);
    for j in 1..=m {
        let mut c = FqVector::zeros(code.n());
        for (plus, combo) in terms(j, variant) {
            let mut z = vec![0u8; m];
            for (k, s) in combo {
                for (zr, &h) in z.iter_mut().zip(cols[k - 1]) {
                    *zr = if s { f.add(*zr, h) } else { f.sub(*zr, h) };
                }
            }
            let x = xi_map(code, &FqVector::from_symbols(&z))?;
            c = if plus { c.add(f, &x) } else { c.sub(f, &x) };
        }
        if !code.contains(&c) {
            return Err(Error::Consistency(format!("c_{j} is not a codeword")));
        }
        if c.get(code.distinguished()[j - 1] - 1) != 1 {
            return Err(Error::Consistency(format!("c_{j} does not have 1 at its coordinate")));
        }
        out.push(c);
    }
    Ok(out)
}

/// The switched code built from `H_{q,m}` and the family `R_j + c_j` at the
/// distinguished coordinates, with `σ_j` applied at coordinate `j`.
///
/// ```
/// use perfect_forge::constructions::fullrank_code;
/// use perfect_forge::gf::FieldPermutation;
///
/// let c = fullrank_code(2, 4, &vec![FieldPermutation::swap(2); 4]).unwrap();
/// assert_eq!(c.enumerate(1 << 12).unwrap().to_matrix().rank(), 15);
/// ```
pub fn fullrank_code(q: u32, m: usize, sigmas: &[FieldPermutation]) -> Result<ImplicitSwitchedCode> {
    if m < 4 {
        return Err(Error::Unsupported(format!("full-rank family needs m >= 4, got {m}")));
    }
    if sigmas.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            found: sigmas.len(),
        });
    }
    if let Some(j) = sigmas.iter().position(|s| s.fixes_one()) {
        return Err(Error::SigmaFixesOne(j + 1));
    }
    let code = Arc::new(HammingCode::build(q, m)?);
    let shifts = fullrank_vectors(&code, Variant::for_field(code.field()))?;
    let mut parts = Vec::with_capacity(m);
    for ((&d, c), sigma) in code.distinguished().iter().zip(shifts).zip(sigmas) {
        parts.push(SwitchedPart {
            component: principal_basis(&code, d)?.with_shift(c)?,
            sigma: sigma.clone(),
        });
    }
    ImplicitSwitchedCode::new(code, parts)
}

/// `c_s(i_s, σ_s)`: each part's shift with its permutation applied.
pub fn switched_vectors(code: &ImplicitSwitchedCode) -> Vec<FqVector> {
    code.parts()
        .iter()
        .map(|p| p.component.shift().permute_at(p.component.coordinate(), &p.sigma))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::components::admissible_check;
    use crate::verify::verify_perfect;

    /// Expands the char-2 formulas by hand on the canonical binary columns,
    /// where `h_j` is the unit vector `e_j` and `ξ(z)` sits at the point whose
    /// column equals `z`.
    fn binary_oracle(code: &HammingCode, j: usize) -> FqVector {
        let m = code.m();
        let point_of = |ks: &[usize]| {
            let mut z = vec![0u8; m];
            for &k in ks {
                z[k - 1] ^= 1;
            }
            (1..=code.n()).find(|&p| code.order().point(p) == z.as_slice()).unwrap()
        };
        let sets: Vec<Vec<usize>> = match j {
            1 => vec![vec![1], vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4]],
            2 => vec![vec![1], vec![2], vec![1, 3, 4], vec![2, 3, 4]],
            4 => vec![
                vec![1],
                vec![2],
                vec![3],
                vec![4],
                vec![1, 2, 3],
                vec![1, 2, 4],
                vec![1, 3, 4],
                vec![2, 3, 4],
            ],
            _ => {
                let mut s: Vec<Vec<usize>> = (1..=j).map(|k| vec![k]).collect();
                if j % 2 == 1 {
                    s.push((1..=j).collect());
                } else {
                    s.push((1..=j / 2).collect());
                    s.push((j / 2 + 1..=j).collect());
                }
                s
            }
        };
        let mut v = vec![0u8; code.n()];
        for s in sets {
            v[point_of(&s) - 1] ^= 1;
        }
        FqVector::from_symbols(&v)
    }

    #[test]
    fn xi_of_columns_and_multiples() {
        let h = HammingCode::build(3, 3).unwrap();
        for i in 1..=h.n() {
            let col = FqVector::from_symbols(h.order().point(i));
            assert_eq!(xi_map(&h, &col).unwrap(), FqVector::unit(13, i - 1, 1));
            let twice = col.scale(h.field(), 2);
            assert_eq!(xi_map(&h, &twice).unwrap(), FqVector::unit(13, i - 1, 2));
        }
        assert!(matches!(xi_map(&h, &FqVector::zeros(3)), Err(Error::ZeroVector)));
    }

    #[test]
    fn binary_vectors_match_hand_expansion() {
        for m in 4..=7 {
            let h = HammingCode::build(2, m).unwrap();
            let cs = fullrank_vectors(&h, Variant::Char2).unwrap();
            for (j, c) in cs.iter().enumerate() {
                let j = j + 1;
                assert_eq!(c, &binary_oracle(&h, j), "m={m} j={j}");
                let expect = match j {
                    1 | 2 => 4,
                    4 => 8,
                    _ if j % 2 == 1 => j + 1,
                    _ => j + 2,
                };
                assert_eq!(c.weight(), expect, "m={m} j={j}");
            }
        }
    }

    #[test]
    fn variants_agree_in_characteristic_two() {
        for (q, m) in [(2, 4), (2, 6), (4, 4)] {
            let h = HammingCode::build(q, m).unwrap();
            assert_eq!(
                fullrank_vectors(&h, Variant::Char2).unwrap(),
                fullrank_vectors(&h, Variant::General).unwrap()
            );
        }
    }

    #[test]
    fn general_vectors_are_codewords() {
        for (q, m) in [(3, 4), (3, 5), (5, 4)] {
            let h = HammingCode::build(q, m).unwrap();
            let cs = fullrank_vectors(&h, Variant::General).unwrap();
            assert_eq!(cs.len(), m);
            assert!(cs.iter().all(|c| h.contains(c)));
        }
    }

    #[test]
    fn vector_preconditions() {
        let h = HammingCode::build(2, 3).unwrap();
        assert!(fullrank_vectors(&h, Variant::Char2).is_err());
        let h = HammingCode::build(3, 4).unwrap();
        assert!(fullrank_vectors(&h, Variant::Char2).is_err());
    }

    #[test]
    fn families_are_admissible() {
        for (q, m) in [(2, 4), (2, 5), (2, 6), (2, 7), (3, 4), (3, 5), (4, 4), (5, 4)] {
            let h = Arc::new(HammingCode::build(q, m).unwrap());
            let cs = fullrank_vectors(&h, Variant::for_field(h.field())).unwrap();
            let family: Vec<_> = h
                .distinguished()
                .iter()
                .zip(cs)
                .map(|(&d, c)| principal_basis(&h, d).unwrap().with_shift(c).unwrap())
                .collect();
            assert!(admissible_check(&family).unwrap().is_admissible(), "q={q} m={m}");
        }
    }

    #[test]
    fn binary_full_rank_code() {
        let code = fullrank_code(2, 4, &vec![FieldPermutation::swap(2); 4]).unwrap();
        let listed = code.enumerate(1 << 12).unwrap();
        assert_eq!(listed.len(), 2048);
        assert!(verify_perfect(&listed).unwrap().passed());
        assert_eq!(listed.to_matrix().rank(), 15);
    }

    #[test]
    fn switched_vectors_leave_the_hamming_code() {
        for (q, sigma) in [(2, FieldPermutation::swap(2)), (3, FieldPermutation::cycle(3))] {
            let code = fullrank_code(q, 4, &vec![sigma; 4]).unwrap();
            let vs = switched_vectors(&code);
            assert!(vs.iter().all(|v| !code.base().contains(v) && code.contains(v).unwrap()));
            assert!(code
                .parts()
                .iter()
                .all(|p| !code.contains(p.component.shift()).unwrap()));
            let m = crate::fqla::FqMatrix::from_rows(code.base().field().clone(), code.n(), &vs).unwrap();
            assert_eq!(m.rank(), 4);
        }
    }

    #[test]
    fn sigma_fixing_one_is_rejected() {
        let mut sigmas = vec![FieldPermutation::swap(2); 4];
        sigmas[2] = FieldPermutation::identity(2);
        assert!(matches!(fullrank_code(2, 4, &sigmas), Err(Error::SigmaFixesOne(3))));
        assert!(fullrank_code(2, 4, &sigmas[..3]).is_err());
        assert!(fullrank_code(2, 3, &sigmas[..3]).is_err());
    }
}
