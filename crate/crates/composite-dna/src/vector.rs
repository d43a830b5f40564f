//! Composite level vectors and their counting combinatorics.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::row::{BitRow, MAX_ROW_LEN};

/// A composite vector: per-position counts of ones over `m` binary strands.
///
/// Entry `x_j` says how many of the `m` strands carry a one at position `j`,
/// so each level lives in `[0, m]`. The pair `(m, levels)` is the whole
/// identity of the value; two vectors with equal levels but different strand
/// counts are distinct.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CompositeVector {
    m: u32,
    levels: Vec<u32>,
}

impl CompositeVector {
    pub fn new(m: u32, levels: Vec<u32>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Empty("strand count"));
        }
        if levels.is_empty() {
            return Err(Error::Empty("vector"));
        }
        for (col, &level) in levels.iter().enumerate() {
            if level > m {
                return Err(Error::LevelOutOfRange { col, level, m });
            }
        }
        Ok(CompositeVector { m, levels })
    }

    /// Strand count `M`.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of positions `n`.
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn level(&self, j: usize) -> u32 {
        self.levels[j]
    }

    fn check_comparable(&self, other: &Self) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                what: "length",
                left: self.len(),
                right: other.len(),
            });
        }
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                what: "strand count",
                left: self.m as usize,
                right: other.m as usize,
            });
        }
        Ok(())
    }

    /// Sum of per-position level differences.
    pub fn l1_distance(&self, other: &Self) -> Result<u64> {
        self.check_comparable(other)?;
        let sum: u128 = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(&a, &b)| u128::from(a.abs_diff(b)))
            .sum();
        Ok(u64::try_from(sum).expect("distance fits in u64"))
    }

    /// Largest per-position level difference.
    pub fn linf_distance(&self, other: &Self) -> Result<u32> {
        self.check_comparable(other)?;
        Ok(self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(&a, &b)| a.abs_diff(b))
            .max()
            .unwrap_or(0))
    }

    /// Number of binary `m x n` matrices with these column sums,
    /// `prod_j C(m, x_j)`.
    pub fn representation_count(&self) -> BigUint {
        let m = BigUint::from(self.m);
        self.levels
            .iter()
            .map(|&x| binomial(m.clone(), BigUint::from(x)))
            .product()
    }

    /// Rows that can appear in some representation of this vector.
    ///
    /// Position `j` is forced to one when `x_j = m`, forced to zero when
    /// `x_j = 0`, and free otherwise. Rows come out in lexicographic order;
    /// there are `2^f` of them, `f` the number of free positions.
    pub fn candidate_rows(&self) -> Result<CandidateRows> {
        if self.len() > MAX_ROW_LEN {
            return Err(Error::RowTooLong {
                len: self.len(),
                max: MAX_ROW_LEN,
            });
        }
        let mut base = BitRow::zeros(self.len())?;
        let mut free = Vec::new();
        for (j, &level) in self.levels.iter().enumerate() {
            if level == self.m {
                base.flip(j);
            } else if level > 0 {
                free.push(j);
            }
        }
        Ok(CandidateRows {
            base,
            free,
            next: Some(0),
        })
    }

    /// `2^f` with `f` the number of free positions of [`Self::candidate_rows`].
    pub fn candidate_row_count(&self) -> BigUint {
        let free = self.levels.iter().filter(|&&x| x > 0 && x < self.m).count();
        BigUint::from(2u32).pow(u32::try_from(free).expect("free positions fit in u32"))
    }

    /// Every vector in `[0, m]^n`, lexicographically.
    pub fn all(m: u32, n: usize) -> AllVectors {
        assert!(m >= 1 && n >= 1, "need m >= 1 and n >= 1");
        AllVectors {
            m,
            next: Some(vec![0; n]),
        }
    }
}

/// Mean of [`CompositeVector::representation_count`] over all of `[0, m]^n`,
/// which collapses to `2^(m n) / (m + 1)^n`.
pub fn average_representation_count(m: u32, n: usize) -> Result<BigRational> {
    if m == 0 || n == 0 {
        return Err(Error::Empty("parameter"));
    }
    let mn = u32::try_from(u64::from(m) * n as u64)
        .map_err(|_| Error::Config("m * n exceeds u32".into()))?;
    let numer = BigUint::from(2u32).pow(mn);
    let denom = BigUint::from(m + 1).pow(u32::try_from(n).expect("n fits in u32"));
    Ok(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
}

/// Lexicographic iterator over the rows of [`CompositeVector::candidate_rows`].
pub struct CandidateRows {
    base: BitRow,
    free: Vec<usize>,
    next: Option<u128>,
}

impl Iterator for CandidateRows {
    type Item = BitRow;

    fn next(&mut self) -> Option<BitRow> {
        let k = self.next?;
        let f = self.free.len();
        let mut row = self.base;
        for (idx, &j) in self.free.iter().enumerate() {
            // Leftmost free position takes the most significant bit of k.
            if (k >> (f - 1 - idx)) & 1 == 1 {
                row.flip(j);
            }
        }
        let limit = 1u128 << f;
        self.next = if k + 1 < limit { Some(k + 1) } else { None };
        Some(row)
    }
}

/// Lexicographic iterator over `[0, m]^n`.
pub struct AllVectors {
    m: u32,
    next: Option<Vec<u32>>,
}

impl Iterator for AllVectors {
    type Item = CompositeVector;

    fn next(&mut self) -> Option<CompositeVector> {
        let levels = self.next.take()?;
        let mut succ = levels.clone();
        for j in (0..succ.len()).rev() {
            if succ[j] < self.m {
                succ[j] += 1;
                self.next = Some(succ);
                break;
            }
            succ[j] = 0;
        }
        Some(CompositeVector { m: self.m, levels })
    }
}

/// Text form is `m n : x_1 x_2 ... x_n`.
impl fmt::Display for CompositeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} :", self.m, self.len())?;
        for &x in &self.levels {
            write!(f, " {x}")?;
        }
        Ok(())
    }
}

impl FromStr for CompositeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, tail) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse("vector needs a ':' separator".into()))?;
        let mut dims = head.split_whitespace();
        let m: u32 = next_num(&mut dims, "strand count")?;
        let n: usize = next_num(&mut dims, "length")?;
        if dims.next().is_some() {
            return Err(Error::Parse("vector header has trailing tokens".into()));
        }
        let levels = tail
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid level {tok:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if levels.len() != n {
            return Err(Error::Parse(format!(
                "header promises {n} levels, found {}",
                levels.len()
            )));
        }
        CompositeVector::new(m, levels)
    }
}

fn next_num<'a, T: FromStr, I: Iterator<Item = &'a str>>(iter: &mut I, what: &str) -> Result<T> {
    let tok = iter
        .next()
        .ok_or_else(|| Error::Parse(format!("missing {what}")))?;
    tok.parse::<T>()
        .map_err(|_| Error::Parse(format!("invalid {what} {tok:?}")))
}

/// Exact integer `ceil(a / b)`.
pub(crate) fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(m: u32, levels: &[u32]) -> CompositeVector {
        CompositeVector::new(m, levels.to_vec()).unwrap()
    }

    #[test]
    fn rejects_out_of_range_levels() {
        assert!(matches!(
            CompositeVector::new(2, vec![0, 3]),
            Err(Error::LevelOutOfRange {
                col: 1,
                level: 3,
                m: 2
            })
        ));
        assert!(CompositeVector::new(0, vec![0]).is_err());
        assert!(CompositeVector::new(2, vec![]).is_err());
    }

    #[test]
    fn distances_on_known_pairs() {
        let x = vec_of(5, &[3, 5, 3, 2]);
        let y = vec_of(5, &[3, 4, 1, 2]);
        assert_eq!(x.l1_distance(&y).unwrap(), 3);
        assert_eq!(x.linf_distance(&y).unwrap(), 2);
        assert_eq!(x.l1_distance(&x).unwrap(), 0);
        assert_eq!(x.linf_distance(&x).unwrap(), 0);
    }

    #[test]
    fn distance_requires_matching_shape() {
        let x = vec_of(2, &[1, 1]);
        let shorter = vec_of(2, &[1]);
        let other_m = vec_of(3, &[1, 1]);
        assert!(x.l1_distance(&shorter).is_err());
        assert!(x.linf_distance(&other_m).is_err());
    }

    #[test]
    fn representation_count_of_known_vector() {
        // C(5,3) * C(5,5) * C(5,3) * C(5,2) = 10 * 1 * 10 * 10.
        let x = vec_of(5, &[3, 5, 3, 2]);
        assert_eq!(x.representation_count(), BigUint::from(1000u32));
        let tight = vec_of(3, &[0, 3]);
        assert_eq!(tight.representation_count(), BigUint::from(1u32));
    }

    #[test]
    fn average_count_small_cases() {
        // 2^m / (m+1) per position: 4/3 for m=2, squared for n=2.
        let a = average_representation_count(2, 1).unwrap();
        assert_eq!(a, BigRational::new(4.into(), 3.into()));
        let b = average_representation_count(2, 2).unwrap();
        assert_eq!(b, BigRational::new(16.into(), 9.into()));
    }

    #[test]
    fn candidate_rows_fix_saturated_positions() {
        let x = vec_of(5, &[3, 5, 3, 2]);
        let rows: Vec<String> = x.candidate_rows().unwrap().map(|r| r.to_string()).collect();
        assert_eq!(x.candidate_row_count(), BigUint::from(8u32));
        assert_eq!(rows.len(), 8);
        // Position 2 is forced to one, the rest vary lexicographically.
        assert_eq!(rows.first().unwrap(), "0100");
        assert_eq!(rows.last().unwrap(), "1111");
        assert!(rows.iter().all(|r| r.as_bytes()[1] == b'1'));
        let mut sorted = rows.clone();
        sorted.sort();
        assert_eq!(rows, sorted);
    }

    #[test]
    fn candidate_rows_single_choice() {
        let x = vec_of(2, &[2, 0]);
        let rows: Vec<BitRow> = x.candidate_rows().unwrap().collect();
        assert_eq!(rows, vec!["10".parse().unwrap()]);
    }

    #[test]
    fn all_vectors_is_lexicographic_and_complete() {
        let all: Vec<CompositeVector> = CompositeVector::all(2, 2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0].levels(), &[0, 0]);
        assert_eq!(all[1].levels(), &[0, 1]);
        assert_eq!(all[8].levels(), &[2, 2]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }

    #[test]
    fn text_roundtrip() {
        let x = vec_of(5, &[3, 5, 3, 2]);
        assert_eq!(x.to_string(), "5 4 : 3 5 3 2");
        assert_eq!(x.to_string().parse::<CompositeVector>().unwrap(), x);
        assert!("5 4 : 3 5 3".parse::<CompositeVector>().is_err());
        assert!("5 4 3 5 3 2".parse::<CompositeVector>().is_err());
    }
}
