//! Codes correcting `t` strand losses together with one substitution: levels
//! live on the `(t + 1)`-grid so losses round away, while the parity of each
//! grid digit feeds a binary locating code that exposes the substitution.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::codes::inner::{InnerCode, InnerVerdict};
use crate::codes::DigitOdometer;
use crate::error::{DecodeFailure, Error, Result};
use crate::matrix::ChannelOutput;
use crate::row::BitRow;
use crate::vector::CompositeVector;

/// Direction the flagged column was adjusted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DriftCase {
    /// Rounding stayed put, so the substitution pulled the sum down: the
    /// level moves up by a full grid step.
    Up,
    /// Rounding travelled the whole step, so the substitution pushed the sum
    /// up: the level moves down by a full grid step.
    Down,
}

/// What the loss-plus-substitution decoder saw along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinedTrace {
    /// Column sums rounded up to the level grid, before any fix.
    pub rounded: Vec<u32>,
    /// Verdict of the parity checks on the rounded digits.
    pub verdict: InnerVerdict,
    /// How the flagged column was moved, if one was flagged.
    pub drift_case: Option<DriftCase>,
}

/// Code whose levels are multiples of `t + 1` and whose grid-digit parities
/// form a word of a binary locating code.
#[derive(Clone, Debug)]
pub struct CombinedCode {
    m: u32,
    n: usize,
    t: usize,
    q: u32,
    inner: InnerCode,
}

impl CombinedCode {
    pub fn new(m: u32, n: usize, t: usize, inner: InnerCode) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Config(
                "strand count and length must be positive".into(),
            ));
        }
        if t == 0 || t as u64 >= m as u64 {
            return Err(Error::Config(format!(
                "loss budget must satisfy 1 <= t < {m}, got {t}"
            )));
        }
        if inner.len() != n {
            return Err(Error::DimensionMismatch {
                what: "inner code length",
                left: inner.len(),
                right: n,
            });
        }
        let q = m / (t as u32 + 1) + 1;
        Ok(CombinedCode { m, n, t, q, inner })
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

    pub fn inner(&self) -> &InnerCode {
        &self.inner
    }

    fn step(&self) -> u32 {
        self.t as u32 + 1
    }

    fn parity_word(&self, digits: &[u32]) -> BitRow {
        let mut word = BitRow::zeros(self.n).expect("inner length fits a row");
        for (j, &d) in digits.iter().enumerate() {
            if d & 1 == 1 {
                word.flip(j);
            }
        }
        word
    }

    pub fn contains(&self, x: &CompositeVector) -> bool {
        if x.m() != self.m || x.len() != self.n {
            return false;
        }
        let step = self.step();
        if x.levels().iter().any(|&v| v % step != 0) {
            return false;
        }
        let digits: Vec<u32> = x.levels().iter().map(|&v| v / step).collect();
        self.inner
            .contains(&self.parity_word(&digits))
            .expect("parity word has inner length")
    }

    pub fn codewords(&self) -> impl Iterator<Item = CompositeVector> + '_ {
        let step = self.step();
        DigitOdometer::new(self.q - 1, self.n).filter_map(move |digits| {
            let parity = self.parity_word(&digits);
            if !self.inner.contains(&parity).expect("length matches") {
                return None;
            }
            let levels = digits.into_iter().map(|d| d * step).collect();
            Some(CompositeVector::new(self.m, levels).expect("grid stays in range"))
        })
    }

    /// Counts codewords with a walk over parity-check syndromes: each column
    /// contributes `ceil(q/2)` even digits or `floor(q/2)` odd ones.
    pub fn size(&self) -> BigUint {
        let table = self.suffix_counts();
        table[0][0].clone()
    }

    fn state_count(&self) -> usize {
        1usize << self.inner.check_count()
    }

    fn column_syndromes(&self) -> Vec<u64> {
        (0..self.n).map(|j| self.inner.column_syndrome(j)).collect()
    }

    /// `counts[j][s]`: ways to pick digits for columns `j..n` whose parity
    /// syndromes XOR to `s`.
    fn suffix_counts(&self) -> Vec<Vec<BigUint>> {
        let states = self.state_count();
        let cols = self.column_syndromes();
        let evens = BigUint::from(self.q / 2 + self.q % 2);
        let odds = BigUint::from(self.q / 2);
        let mut counts = vec![vec![BigUint::zero(); states]; self.n + 1];
        counts[self.n][0] = BigUint::one();
        for j in (0..self.n).rev() {
            for s in 0..states {
                let even_part = &counts[j + 1][s] * &evens;
                let odd_part = &counts[j + 1][s ^ cols[j] as usize] * &odds;
                counts[j][s] = even_part + odd_part;
            }
        }
        counts
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
        let cols = self.column_syndromes();
        let counts = self.suffix_counts();
        let step = self.step();
        let mut rest = rank.clone();
        let mut need = 0usize;
        let mut levels = Vec::with_capacity(self.n);
        for j in 0..self.n {
            for d in 0..self.q {
                let after = if d & 1 == 1 {
                    need ^ cols[j] as usize
                } else {
                    need
                };
                let ways = &counts[j + 1][after];
                if rest < *ways {
                    levels.push(d * step);
                    need = after;
                    break;
                }
                rest -= ways;
            }
        }
        debug_assert_eq!(levels.len(), self.n);
        let word = CompositeVector::new(self.m, levels)?;
        debug_assert!(self.contains(&word));
        Ok(word)
    }

    pub fn encode(&self, rank: &BigUint) -> Result<CompositeVector> {
        self.unrank(rank)
    }

    pub fn decode(&self, received: &ChannelOutput) -> Result<CompositeVector> {
        self.decode_traced(received).map(|(word, _)| word)
    }

    /// Recovers the codeword from a matrix missing at most `t` rows and
    /// carrying at most one flipped cell.
    ///
    /// Column sums are rounded up to the level grid; the digit parities then
    /// face the inner checks. A flagged column whose rounding never moved
    /// gains a grid step, one whose rounding travelled the full step loses
    /// one. The rounded value is range-checked only after the verdict: an
    /// upward substitution can push it past `m` before the fix pulls it back.
    pub fn decode_traced(
        &self,
        received: &ChannelOutput,
    ) -> Result<(CompositeVector, CombinedTrace)> {
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
        let step = self.step();
        let mut sums = Vec::with_capacity(self.n);
        let mut rounded = Vec::with_capacity(self.n);
        for col in 0..self.n {
            let sum: u32 = received.rows().iter().map(|r| r.get(col) as u32).sum();
            sums.push(sum);
            rounded.push(sum + (step - sum % step) % step);
        }
        let digits: Vec<u32> = rounded.iter().map(|&y| y / step).collect();
        let verdict = self
            .inner
            .verdict(&self.parity_word(&digits))
            .expect("parity word has inner length");
        let mut levels = rounded.clone();
        let mut drift_case = None;
        match verdict {
            InnerVerdict::Clean => {}
            InnerVerdict::ErrorAt(h) => {
                let drift = rounded[h] - sums[h];
                if drift == 0 {
                    levels[h] = rounded[h] + step;
                    drift_case = Some(DriftCase::Up);
                } else if drift == self.t as u32 {
                    levels[h] = rounded[h] - step;
                    drift_case = Some(DriftCase::Down);
                } else {
                    return Err(DecodeFailure::ColumnDrift {
                        col: h + 1,
                        delta: drift,
                        step,
                    }
                    .into());
                }
            }
            InnerVerdict::Uncorrectable => {
                return Err(DecodeFailure::InnerUncorrectable.into());
            }
        }
        for (col, &level) in levels.iter().enumerate() {
            if level > self.m {
                return Err(DecodeFailure::LevelRange {
                    col: col + 1,
                    level,
                    max: self.m,
                }
                .into());
            }
        }
        let word = CompositeVector::new(self.m, levels)?;
        if !self.contains(&word) {
            return Err(DecodeFailure::NotACodeword.into());
        }
        let trace = CombinedTrace {
            rounded,
            verdict,
            drift_case,
        };
        Ok((word, trace))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::row::BitRow;

    fn code(m: u32, n: usize, t: usize) -> CombinedCode {
        CombinedCode::new(m, n, t, InnerCode::for_length(n).unwrap()).unwrap()
    }

    fn output(rows: &[&str]) -> ChannelOutput {
        ChannelOutput::new(rows.iter().map(|r| r.parse::<BitRow>().unwrap()).collect())
    }

    #[test]
    fn size_matches_enumeration() {
        for (m, n, t) in [(3, 3, 1), (3, 4, 1), (3, 7, 1), (5, 4, 2), (4, 5, 1)] {
            let code = code(m, n, t);
            let listed = code.codewords().count();
            assert_eq!(code.size(), BigUint::from(listed), "m={m} n={n} t={t}");
        }
        assert_eq!(code(3, 7, 1).size(), BigUint::from(16u32));
    }

    #[test]
    fn unrank_walks_lexicographic_order() {
        let code = code(3, 4, 1);
        let words: Vec<CompositeVector> = code.codewords().collect();
        for (i, expected) in words.iter().enumerate() {
            assert_eq!(&code.unrank(&BigUint::from(i)).unwrap(), expected);
        }
        assert!(code.unrank(&code.size()).is_err());
    }

    #[test]
    fn clean_path_rounds_losses_away() {
        let code = code(3, 3, 1);
        let word = CompositeVector::new(3, vec![2, 2, 2]).unwrap();
        assert!(code.contains(&word));
        // One strand lost from the representation {110, 011, 101}.
        let received = output(&["110", "011"]);
        let (decoded, trace) = code.decode_traced(&received).unwrap();
        assert_eq!(decoded, word);
        assert_eq!(trace.verdict, InnerVerdict::Clean);
        assert_eq!(trace.drift_case, None);
        assert_eq!(trace.rounded, vec![2, 2, 2]);
    }

    #[test]
    fn masked_downward_substitution_raises_flagged_column() {
        let code = code(3, 3, 1);
        let word = CompositeVector::new(3, vec![2, 2, 2]).unwrap();
        // Row 110 lost AND a 1 flipped off in column 1: its sum falls by the
        // full step, so rounding stays put and the parity checks flag it.
        let received = output(&["011", "001"]);
        let (decoded, trace) = code.decode_traced(&received).unwrap();
        assert_eq!(decoded, word);
        assert_eq!(trace.verdict, InnerVerdict::ErrorAt(0));
        assert_eq!(trace.drift_case, Some(DriftCase::Up));
        assert_eq!(trace.rounded, vec![0, 2, 2]);
    }

    #[test]
    fn lone_downward_substitution_is_absorbed_by_rounding() {
        let code = code(3, 3, 1);
        let word = CompositeVector::new(3, vec![2, 2, 2]).unwrap();
        // All rows present, one 1 flipped off in column 2: the sum lands
        // one below its level and rounds straight back.
        let received = output(&["110", "001", "101"]);
        let (decoded, trace) = code.decode_traced(&received).unwrap();
        assert_eq!(decoded, word);
        assert_eq!(trace.verdict, InnerVerdict::Clean);
    }

    #[test]
    fn rounding_may_exceed_m_before_the_fix() {
        let code = code(3, 3, 1);
        let word = CompositeVector::new(3, vec![2, 2, 2]).unwrap();
        assert!(code.contains(&word));
        // No losses, a substitution pushes column 1 to sum 3: it rounds to 4,
        // beyond m, and the fix brings it back to 2.
        let received = output(&["110", "111", "101"]);
        let sums_probe: u32 = received.rows().iter().map(|r| r.get(0) as u32).sum();
        assert_eq!(sums_probe, 3);
        let (decoded, trace) = code.decode_traced(&received).unwrap();
        assert_eq!(decoded, word);
        assert_eq!(trace.rounded, vec![4, 2, 2]);
        assert_eq!(trace.drift_case, Some(DriftCase::Down));
    }

    #[test]
    fn unfixable_syndromes_are_reported() {
        let code = code(3, 2, 1);
        // Parity word (1, 0) under the all-equal inner code: detectable,
        // not locatable.
        let received = output(&["10", "10", "00"]);
        assert!(matches!(
            code.decode(&received),
            Err(Error::Decode(DecodeFailure::InnerUncorrectable))
        ));
    }

    #[test]
    fn row_budget_is_enforced() {
        let code = code(3, 3, 1);
        let received = output(&["110"]);
        assert!(matches!(
            code.decode(&received),
            Err(Error::Decode(DecodeFailure::RowCount {
                got: 1,
                min: 2,
                max: 3
            }))
        ));
    }
}
