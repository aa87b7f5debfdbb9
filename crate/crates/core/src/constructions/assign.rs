use crate::error::{Error, Result};
use crate::gf::{Field, FieldPermutation};
use crate::rng::{keyed, SplitMix64};

/// A map from the words of a code, identified by sorted index, to field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaFunction {
    Zero,
    /// One value per codeword in sorted order.
    Table(Vec<u8>),
    /// `keyed(seed, index) mod q`.
    Seeded(u64),
}

impl LambdaFunction {
    pub(crate) fn validate(&self, field: &Field, domain: usize) -> Result<()> {
        if let LambdaFunction::Table(t) = self {
            if t.len() != domain {
                return Err(Error::LengthMismatch {
                    expected: domain,
                    found: t.len(),
                });
            }
            for &v in t {
                field.check_symbol(v as u32)?;
            }
        }
        Ok(())
    }

    /// Value at the codeword with sorted index `index`.
    pub fn value(&self, q: u32, index: usize) -> u8 {
        match self {
            LambdaFunction::Zero => 0,
            LambdaFunction::Table(t) => t[index],
            LambdaFunction::Seeded(seed) => (keyed(*seed, index as u64) % q as u64) as u8,
        }
    }
}

/// A permutation of the field for every word of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaMap {
    Uniform(FieldPermutation),
    /// One permutation per codeword in sorted order.
    Table(Vec<FieldPermutation>),
    /// Fisher-Yates shuffle driven by `SplitMix64::substream(seed, index)`.
    Seeded(u64),
}

impl SigmaMap {
    pub(crate) fn validate(&self, q: u32, domain: usize) -> Result<()> {
        let check = |p: &FieldPermutation| {
            if p.table().len() != q as usize {
                return Err(Error::LengthMismatch {
                    expected: q as usize,
                    found: p.table().len(),
                });
            }
            Ok(())
        };
        match self {
            SigmaMap::Uniform(p) => check(p),
            SigmaMap::Table(t) => {
                if t.len() != domain {
                    return Err(Error::LengthMismatch {
                        expected: domain,
                        found: t.len(),
                    });
                }
                t.iter().try_for_each(check)
            }
            SigmaMap::Seeded(_) => Ok(()),
        }
    }

    pub fn permutation(&self, q: u32, index: usize) -> FieldPermutation {
        match self {
            SigmaMap::Uniform(p) => p.clone(),
            SigmaMap::Table(t) => t[index].clone(),
            SigmaMap::Seeded(seed) => {
                let mut rng = SplitMix64::substream(*seed, index as u64);
                let mut table: Vec<u32> = (0..q).collect();
                for j in (1..table.len()).rev() {
                    let k = rng.below(j as u64 + 1) as usize;
                    table.swap(j, k);
                }
                FieldPermutation::new(q, &table).expect("a shuffle is a bijection")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_values_are_stable_and_in_range() {
        let l = LambdaFunction::Seeded(7);
        let a: Vec<u8> = (0..50).map(|i| l.value(3, i)).collect();
        let b: Vec<u8> = (0..50).map(|i| l.value(3, i)).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|&v| v < 3));
        assert!(a.contains(&0) && a.contains(&1) && a.contains(&2));
    }

    #[test]
    fn table_validation() {
        let f = Field::prime(2).unwrap();
        assert!(LambdaFunction::Table(vec![0, 1]).validate(&f, 3).is_err());
        assert!(LambdaFunction::Table(vec![0, 2]).validate(&f, 2).is_err());
        assert!(LambdaFunction::Table(vec![0, 1]).validate(&f, 2).is_ok());
    }

    #[test]
    fn seeded_sigmas_are_permutations_and_vary() {
        let s = SigmaMap::Seeded(3);
        let perms: Vec<FieldPermutation> = (0..30).map(|i| s.permutation(4, i)).collect();
        assert!(perms.iter().any(|p| *p != perms[0]));
        assert!(SigmaMap::Table(vec![FieldPermutation::identity(3)])
            .validate(3, 2)
            .is_err());
        assert!(SigmaMap::Uniform(FieldPermutation::identity(2)).validate(3, 1).is_err());
    }
}
