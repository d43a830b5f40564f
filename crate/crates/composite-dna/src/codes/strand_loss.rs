//! Strand-loss-correcting codes: every level is a multiple of `t + 1`, so up
//! to `t` dropped strands can never move a column sum past the midpoint
//! between two codeword levels.

use num_bigint::BigUint;

use crate::codes::DigitOdometer;
use crate::error::{DecodeFailure, Error, Result};
use crate::matrix::ChannelOutput;
use crate::vector::CompositeVector;

/// Code over `[0, m]^n` whose levels are multiples of `t + 1`.
///
/// Losing a strand lowers each column sum by at most one, so `t` losses keep
/// every sum within `t` of its original level; rounding up to the next
/// multiple of `t + 1` recovers the codeword.
#[derive(Clone, Debug)]
pub struct StrandLossCode {
    m: u32,
    n: usize,
    t: usize,
    radix: u32,
}

impl StrandLossCode {
    pub fn new(m: u32, n: usize, t: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Config(
                "strand count and length must be positive".into(),
            ));
        }
        if t == 0 || t as u64 > m as u64 {
            return Err(Error::Config(format!(
                "loss budget must satisfy 1 <= t <= {m}, got {t}"
            )));
        }
        let step = t as u32 + 1;
        let radix = m / step + 1;
        Ok(StrandLossCode { m, n, t, radix })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Number of admissible levels per column.
    pub fn radix(&self) -> u32 {
        self.radix
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.radix).pow(self.n as u32)
    }

    pub fn contains(&self, x: &CompositeVector) -> bool {
        let step = self.t as u32 + 1;
        x.m() == self.m && x.len() == self.n && x.levels().iter().all(|&v| v % step == 0)
    }

    pub fn codewords(&self) -> impl Iterator<Item = CompositeVector> + '_ {
        let step = self.t as u32 + 1;
        DigitOdometer::new(self.radix - 1, self.n).map(move |digits| {
            let levels = digits.into_iter().map(|d| d * step).collect();
            CompositeVector::new(self.m, levels).expect("digit grid stays within range")
        })
    }

    /// Maps a base-`radix` message, one digit per column, to its codeword.
    pub fn encode(&self, digits: &[u32]) -> Result<CompositeVector> {
        if digits.len() != self.n {
            return Err(Error::DimensionMismatch {
                what: "message length",
                left: digits.len(),
                right: self.n,
            });
        }
        let step = self.t as u32 + 1;
        let mut levels = Vec::with_capacity(self.n);
        for (pos, &digit) in digits.iter().enumerate() {
            if digit >= self.radix {
                return Err(Error::DigitOutOfRange {
                    pos,
                    digit,
                    radix: self.radix,
                });
            }
            levels.push(digit * step);
        }
        CompositeVector::new(self.m, levels)
    }

    /// Maps a rank in `[0, size)` to the codeword at that position in
    /// lexicographic order.
    pub fn unrank(&self, rank: &BigUint) -> Result<CompositeVector> {
        let size = self.size();
        if *rank >= size {
            return Err(Error::RankOutOfRange {
                rank: rank.to_string(),
                size: size.to_string(),
            });
        }
        let radix = BigUint::from(self.radix);
        let mut rest = rank.clone();
        let mut digits = vec![0u32; self.n];
        for slot in digits.iter_mut().rev() {
            let digit = &rest % &radix;
            *slot = digit.try_into().expect("digit below radix fits in u32");
            rest /= &radix;
        }
        self.encode(&digits)
    }

    /// Recovers the codeword from a matrix missing at most `t` rows.
    pub fn decode(&self, received: &ChannelOutput) -> Result<CompositeVector> {
        let got = received.row_count();
        let min = self.m as usize - self.t;
        let max = self.m as usize;
        if got < min || got > max {
            return Err(DecodeFailure::RowCount { got, min, max }.into());
        }
        for (i, row) in received.rows().iter().enumerate() {
            if row.len() != self.n {
                return Err(DecodeFailure::RowLength {
                    row: i + 1,
                    len: row.len(),
                    expected: self.n.to_string(),
                }
                .into());
            }
        }
        let step = self.t as u32 + 1;
        let lost = (self.m as usize - got) as u32;
        let mut levels = Vec::with_capacity(self.n);
        for col in 0..self.n {
            let sum: u32 = received.rows().iter().map(|r| r.get(col) as u32).sum();
            let level = sum + (step - sum % step) % step;
            if level > self.m {
                return Err(DecodeFailure::LevelRange {
                    col: col + 1,
                    level,
                    max: self.m,
                }
                .into());
            }
            if level - sum > lost {
                // The column would need more refills than rows went missing.
                return Err(DecodeFailure::NotACodeword.into());
            }
            levels.push(level);
        }
        let decoded = CompositeVector::new(self.m, levels)?;
        debug_assert!(self.contains(&decoded));
        Ok(decoded)
    }
}
