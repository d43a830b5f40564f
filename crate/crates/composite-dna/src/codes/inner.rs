//! Binary parity-check codes used to pin down which column of a composite
//! vector absorbed a substitution.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::row::BitRow;

/// Outcome of syndrome matching on a parity word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum InnerVerdict {
    /// All checks hold.
    Clean,
    /// Flipping exactly this column (0-based) restores all checks.
    ErrorAt(usize),
    /// No single column explains the syndrome.
    Uncorrectable,
}

/// Binary linear code given by parity checks, each a mask over columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerCode {
    n: usize,
    checks: Vec<u64>,
}

impl InnerCode {
    /// Code checked column-wise by the binary digits of the column index:
    /// column `j` (1-based) participates in check `i` iff bit `i` of `j` is
    /// set. Distinct nonzero indices make every single flip locatable.
    pub fn shortened_hamming(n: usize) -> Result<Self> {
        if !(3..=crate::row::MAX_ROW_LEN).contains(&n) {
            return Err(Error::Config(format!(
                "index-check code needs 3 <= n <= 64, got {n}"
            )));
        }
        let bits = (usize::BITS - n.leading_zeros()) as usize;
        let mut checks = vec![0u64; bits];
        for j in 1..=n {
            for (i, check) in checks.iter_mut().enumerate() {
                if j >> i & 1 == 1 {
                    *check |= 1 << (j - 1);
                }
            }
        }
        Ok(InnerCode { n, checks })
    }

    /// All-equal code: adjacent columns must agree.
    pub fn repetition(n: usize) -> Result<Self> {
        if n == 0 || n > crate::row::MAX_ROW_LEN {
            return Err(Error::Config(format!(
                "repetition code needs 1 <= n <= 64, got {n}"
            )));
        }
        let checks = (0..n - 1).map(|j| 0b11u64 << j).collect();
        Ok(InnerCode { n, checks })
    }

    /// Locating code when the length allows it, all-equal code below that.
    pub fn for_length(n: usize) -> Result<Self> {
        if n >= 3 {
            Self::shortened_hamming(n)
        } else {
            Self::repetition(n)
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn check_count(&self) -> usize {
        self.checks.len()
    }

    /// Syndrome of a flip in the given 0-based column: one bit per check.
    pub(crate) fn column_syndrome(&self, col: usize) -> u64 {
        let mut s = 0u64;
        for (i, check) in self.checks.iter().enumerate() {
            if check >> col & 1 == 1 {
                s |= 1 << i;
            }
        }
        s
    }

    fn syndrome(&self, word: &BitRow) -> u64 {
        let mut s = 0u64;
        for (i, check) in self.checks.iter().enumerate() {
            if ((word.mask() & check).count_ones() & 1) == 1 {
                s |= 1 << i;
            }
        }
        s
    }

    pub fn contains(&self, word: &BitRow) -> Result<bool> {
        self.check_len(word)?;
        Ok(self.syndrome(word) == 0)
    }

    /// Matches the syndrome against single-column flips.
    pub fn verdict(&self, word: &BitRow) -> Result<InnerVerdict> {
        self.check_len(word)?;
        let s = self.syndrome(word);
        if s == 0 {
            return Ok(InnerVerdict::Clean);
        }
        let mut hit = None;
        for col in 0..self.n {
            if self.column_syndrome(col) == s {
                if hit.is_some() {
                    return Ok(InnerVerdict::Uncorrectable);
                }
                hit = Some(col);
            }
        }
        Ok(match hit {
            Some(col) => InnerVerdict::ErrorAt(col),
            None => InnerVerdict::Uncorrectable,
        })
    }

    /// Number of codewords: `2^(n - rank)` over GF(2).
    pub fn size(&self) -> BigUint {
        BigUint::one() << (self.n - self.rank())
    }

    /// GF(2) rank of the check set, by elimination on row masks.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<u64> = self.checks.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(pivot) = (rank..rows.len()).find(|&i| rows[i] >> col & 1 == 1) else {
                continue;
            };
            rows.swap(rank, pivot);
            let lead = rows[rank];
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && *row >> col & 1 == 1 {
                    *row ^= lead;
                }
            }
            rank += 1;
        }
        rank
    }

    fn check_len(&self, word: &BitRow) -> Result<()> {
        if word.len() != self.n {
            return Err(Error::DimensionMismatch {
                what: "parity word length",
                left: word.len(),
                right: self.n,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(s: &str) -> BitRow {
        s.parse().unwrap()
    }

    #[test]
    fn index_checks_locate_every_single_flip() {
        for n in 3..=9usize {
            let code = InnerCode::shortened_hamming(n).unwrap();
            for mask in 0..1u64 << n {
                let word = BitRow::from_mask(mask, n).unwrap();
                if !code.contains(&word).unwrap() {
                    continue;
                }
                assert_eq!(code.verdict(&word).unwrap(), InnerVerdict::Clean);
                for col in 0..n {
                    let mut flipped = word;
                    flipped.flip(col);
                    assert_eq!(
                        code.verdict(&flipped).unwrap(),
                        InnerVerdict::ErrorAt(col),
                        "n={n} word={word} col={col}"
                    );
                }
            }
        }
    }

    #[test]
    fn index_check_size_matches_enumeration() {
        for n in 3..=9usize {
            let code = InnerCode::shortened_hamming(n).unwrap();
            let listed = (0..1u64 << n)
                .filter(|&mask| code.contains(&BitRow::from_mask(mask, n).unwrap()).unwrap())
                .count();
            assert_eq!(code.size(), BigUint::from(listed));
        }
        assert_eq!(
            InnerCode::shortened_hamming(7).unwrap().size(),
            BigUint::from(16u32)
        );
    }

    #[test]
    fn repetition_detects_but_cannot_locate_at_length_two() {
        let code = InnerCode::repetition(2).unwrap();
        assert!(code.contains(&row("00")).unwrap());
        assert!(code.contains(&row("11")).unwrap());
        assert_eq!(
            code.verdict(&row("01")).unwrap(),
            InnerVerdict::Uncorrectable
        );
        assert_eq!(code.size(), BigUint::from(2u32));
    }

    #[test]
    fn repetition_locates_when_long_enough() {
        let code = InnerCode::repetition(5).unwrap();
        assert_eq!(
            code.verdict(&row("00100")).unwrap(),
            InnerVerdict::ErrorAt(2)
        );
        assert_eq!(
            code.verdict(&row("11011")).unwrap(),
            InnerVerdict::ErrorAt(2)
        );
        assert_eq!(
            code.verdict(&row("01100")).unwrap(),
            InnerVerdict::Uncorrectable
        );
    }

    #[test]
    fn length_dispatch() {
        assert_eq!(
            InnerCode::for_length(2).unwrap(),
            InnerCode::repetition(2).unwrap()
        );
        assert_eq!(
            InnerCode::for_length(7).unwrap(),
            InnerCode::shortened_hamming(7).unwrap()
        );
        assert!(InnerCode::shortened_hamming(2).is_err());
        let free = InnerCode::repetition(1).unwrap();
        assert_eq!(free.size(), BigUint::from(2u32));
        assert_eq!(free.verdict(&row("1")).unwrap(), InnerVerdict::Clean);
    }

    #[test]
    fn verdict_checks_length() {
        let code = InnerCode::shortened_hamming(4).unwrap();
        assert!(code.verdict(&row("011")).is_err());
    }
}
