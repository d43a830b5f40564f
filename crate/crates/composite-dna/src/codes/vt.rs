//! Single-deletion-correcting codes built from a weighted checksum: the sum
//! of `position * level` over a codeword is pinned to a fixed residue modulo
//! `n + 1`, which both locates the row that lost a symbol and repairs it.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{DecodeFailure, Error, Result};
use crate::matrix::ChannelOutput;
use crate::row::BitRow;
use crate::vector::CompositeVector;

/// Weighted checksum of a binary row: sum of `j * bit_j` over 1-based
/// positions, reduced modulo `modulus`.
pub fn row_syndrome(row: &BitRow, modulus: u32) -> u32 {
    let mut sum = 0u64;
    for (j, bit) in row.iter().enumerate() {
        sum += (j as u64 + 1) * bit as u64;
    }
    (sum % modulus as u64) as u32
}

/// Weighted checksum of a composite vector: sum of `j * level_j` over
/// 1-based positions, reduced modulo `n + 1`.
pub fn vector_syndrome(x: &CompositeVector) -> u32 {
    let modulus = x.len() as u64 + 1;
    let mut sum = 0u64;
    for (j, &level) in x.levels().iter().enumerate() {
        sum = (sum + (j as u64 + 1) * level as u64) % modulus;
    }
    sum as u32
}

/// Restores the length-`n` binary row with checksum residue `a` from which
/// `received` arose by a single symbol deletion.
///
/// Writing `w` for the ones in `received` and `delta` for the checksum
/// deficit, the repair inserts a 0 with exactly `delta` ones to its right
/// when `delta <= w`, and otherwise inserts a 1 with `delta - w - 1` zeros to
/// its left. Each reachable deficit corresponds to exactly one such spot.
pub fn binary_vt_decode(received: &BitRow, n: usize, a: u32) -> Result<BitRow> {
    if received.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            what: "deleted-row length",
            left: received.len(),
            right: n - 1,
        });
    }
    let modulus = n as u32 + 1;
    let got = row_syndrome(received, modulus);
    let delta = (a + modulus - got % modulus) % modulus;
    let w = received.ones();
    if delta <= w {
        // Insert 0 immediately left of the delta-th one from the right;
        // delta of 0 appends at the far end.
        let mut seen = 0;
        let mut gap = received.len();
        if delta > 0 {
            for j in (0..received.len()).rev() {
                if received.get(j) == 1 {
                    seen += 1;
                    if seen == delta {
                        gap = j;
                        break;
                    }
                }
            }
        }
        received.insert(gap, 0)
    } else {
        // Insert 1 immediately after the (delta - w - 1)-th zero from the
        // left; zero zeros means the row starts with the new 1.
        let want = delta - w - 1;
        let mut seen = 0;
        let mut gap = 0;
        if want > 0 {
            for j in 0..received.len() {
                if received.get(j) == 0 {
                    seen += 1;
                    if seen == want {
                        gap = j + 1;
                        break;
                    }
                }
            }
            if seen < want {
                return Err(DecodeFailure::Syndrome { got, expected: a }.into());
            }
        }
        received.insert(gap, 1)
    }
}

/// What the single-deletion decoder saw along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VtDecodeTrace {
    /// Index of the row that came up one symbol short, if any.
    pub short_row: Option<usize>,
    /// Checksum of the intact rows, modulo `n + 1`.
    pub rest_syndrome: u32,
    /// Residue the repaired row has to hit.
    pub target_syndrome: u32,
    /// The row after reinsertion.
    pub repaired_row: Option<BitRow>,
}

/// Code of composite vectors whose weighted checksum is `a` modulo `n + 1`.
///
/// Row checksums add up to the vector checksum, so after one deletion the
/// intact rows reveal the residue the damaged row must restore.
#[derive(Clone, Debug)]
pub struct CompositeVtCode {
    m: u32,
    n: usize,
    a: u32,
}

impl CompositeVtCode {
    pub fn new(m: u32, n: usize, a: u32) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Config(
                "strand count and length must be positive".into(),
            ));
        }
        if a as usize > n {
            return Err(Error::Config(format!(
                "checksum residue must lie in [0, {n}], got {a}"
            )));
        }
        Ok(CompositeVtCode { m, n, a })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn residue(&self) -> u32 {
        self.a
    }

    pub fn contains(&self, x: &CompositeVector) -> bool {
        x.m() == self.m && x.len() == self.n && vector_syndrome(x) == self.a
    }

    pub fn codewords(&self) -> impl Iterator<Item = CompositeVector> + '_ {
        CompositeVector::all(self.m, self.n).filter(|x| vector_syndrome(x) == self.a)
    }

    /// Counts vectors in `[0, m]^n` whose checksum residue is `a`, by a walk
    /// over residue classes.
    pub fn size(&self) -> BigUint {
        let table = self.suffix_counts();
        table[0][self.a as usize].clone()
    }

    /// `counts[j][r]`: ways to fill positions `j..n` so the weighted sum of
    /// the filled tail is `r` modulo `n + 1`.
    fn suffix_counts(&self) -> Vec<Vec<BigUint>> {
        let modulus = self.n + 1;
        let mut counts = vec![vec![BigUint::zero(); modulus]; self.n + 1];
        counts[self.n][0] = BigUint::one();
        for j in (0..self.n).rev() {
            let weight = j + 1;
            for r in 0..modulus {
                let mut total = BigUint::zero();
                for level in 0..=self.m as usize {
                    let rest = (r + modulus * modulus - (level * weight) % modulus) % modulus;
                    total += &counts[j + 1][rest];
                }
                counts[j][r] = total;
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
        let modulus = self.n + 1;
        let counts = self.suffix_counts();
        let mut rest = rank.clone();
        let mut need = self.a as usize;
        let mut levels = Vec::with_capacity(self.n);
        for j in 0..self.n {
            let weight = j + 1;
            for level in 0..=self.m {
                let after =
                    (need + modulus * modulus - (level as usize * weight) % modulus) % modulus;
                let ways = &counts[j + 1][after];
                if rest < *ways {
                    levels.push(level);
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

    /// Recovers the codeword from a full set of rows of which at most one
    /// lost a single symbol, returning the repair trace alongside.
    pub fn decode_traced(
        &self,
        received: &ChannelOutput,
    ) -> Result<(CompositeVector, VtDecodeTrace)> {
        let got = received.row_count();
        let m = self.m as usize;
        if got != m {
            return Err(DecodeFailure::RowCount {
                got,
                min: m,
                max: m,
            }
            .into());
        }
        let modulus = self.n as u32 + 1;
        let mut short = None;
        for (i, row) in received.rows().iter().enumerate() {
            if row.len() == self.n {
                continue;
            }
            if row.len() + 1 == self.n {
                if short.is_some() {
                    let shorts = received
                        .rows()
                        .iter()
                        .filter(|r| r.len() + 1 == self.n)
                        .count();
                    return Err(DecodeFailure::MultipleShortRows { got: shorts }.into());
                }
                short = Some(i);
            } else {
                return Err(DecodeFailure::RowLength {
                    row: i + 1,
                    len: row.len(),
                    expected: format!("{} or {}", self.n, self.n - 1),
                }
                .into());
            }
        }
        match short {
            None => {
                let sums = received.column_sums()?;
                let got = vector_syndrome(&sums);
                if got != self.a {
                    return Err(DecodeFailure::Syndrome {
                        got,
                        expected: self.a,
                    }
                    .into());
                }
                let trace = VtDecodeTrace {
                    short_row: None,
                    rest_syndrome: got,
                    target_syndrome: 0,
                    repaired_row: None,
                };
                Ok((sums, trace))
            }
            Some(k) => {
                let mut rest = 0u32;
                for (i, row) in received.rows().iter().enumerate() {
                    if i != k {
                        rest = (rest + row_syndrome(row, modulus)) % modulus;
                    }
                }
                let target = (self.a + modulus - rest) % modulus;
                let repaired = binary_vt_decode(&received.rows()[k], self.n, target)?;
                let mut rows = received.rows().to_vec();
                rows[k] = repaired;
                let sums = ChannelOutput::new(rows).column_sums()?;
                debug_assert!(self.contains(&sums));
                let trace = VtDecodeTrace {
                    short_row: Some(k),
                    rest_syndrome: rest,
                    target_syndrome: target,
                    repaired_row: Some(repaired),
                };
                Ok((sums, trace))
            }
        }
    }
}
