//! Packed binary strand rows.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Hard row width limit imposed by the u64 packing.
pub const MAX_ROW_LEN: usize = 64;

/// One binary strand of at most [`MAX_ROW_LEN`] symbols.
///
/// Symbol `j` (0-based, leftmost first) lives in bit `j`. The value of unused
/// high bits is always zero, which makes equality and hashing plain derives.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BitRow {
    bits: u64,
    len: u8,
}

impl BitRow {
    /// All-zero row of the given length.
    pub fn zeros(len: usize) -> Result<Self> {
        if len > MAX_ROW_LEN {
            return Err(Error::RowTooLong {
                len,
                max: MAX_ROW_LEN,
            });
        }
        Ok(BitRow {
            bits: 0,
            len: len as u8,
        })
    }

    /// Row from symbol values, each 0 or 1, leftmost first.
    pub fn from_symbols<I>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = u8>,
    {
        let mut row = BitRow::default();
        for s in symbols {
            match s {
                0 => row.push(0)?,
                1 => row.push(1)?,
                other => return Err(Error::Parse(format!("symbol {other} is not binary"))),
            }
        }
        Ok(row)
    }

    /// Row from a prepacked mask; bits at or above `len` must be clear.
    pub fn from_mask(bits: u64, len: usize) -> Result<Self> {
        if len > MAX_ROW_LEN {
            return Err(Error::RowTooLong {
                len,
                max: MAX_ROW_LEN,
            });
        }
        if len < MAX_ROW_LEN && (bits >> len) != 0 {
            return Err(Error::Parse(format!(
                "mask {bits:#x} overflows length {len}"
            )));
        }
        Ok(BitRow {
            bits,
            len: len as u8,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed form; symbol `j` is bit `j`.
    pub fn mask(&self) -> u64 {
        self.bits
    }

    /// Symbol at position `j`. Panics if out of range.
    pub fn get(&self, j: usize) -> u8 {
        assert!(
            j < self.len(),
            "position {j} out of range for length {}",
            self.len
        );
        ((self.bits >> j) & 1) as u8
    }

    /// Appends a symbol on the right.
    pub fn push(&mut self, symbol: u8) -> Result<()> {
        if self.len() == MAX_ROW_LEN {
            return Err(Error::RowTooLong {
                len: MAX_ROW_LEN + 1,
                max: MAX_ROW_LEN,
            });
        }
        self.bits |= u64::from(symbol & 1) << self.len;
        self.len += 1;
        Ok(())
    }

    /// Complements the symbol at `j`. Panics if out of range.
    pub fn flip(&mut self, j: usize) {
        assert!(
            j < self.len(),
            "position {j} out of range for length {}",
            self.len
        );
        self.bits ^= 1 << j;
    }

    /// Number of ones.
    pub fn ones(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Number of maximal runs of equal symbols.
    pub fn run_count(&self) -> Result<usize> {
        if self.is_empty() {
            return Err(Error::Empty("row"));
        }
        // Boundaries between adjacent unequal symbols, counted in parallel.
        let boundaries = (self.bits ^ (self.bits >> 1)) & (mask_low(self.len() - 1));
        Ok(boundaries.count_ones() as usize + 1)
    }

    /// Row with the symbol at `j` removed; later symbols shift left.
    pub fn delete(&self, j: usize) -> Result<Self> {
        if j >= self.len() {
            return Err(Error::Pattern(format!(
                "deletion position {} out of range for row length {}",
                j + 1,
                self.len
            )));
        }
        let low = self.bits & mask_low(j);
        let high = (self.bits >> (j + 1)) << j;
        Ok(BitRow {
            bits: low | high,
            len: self.len - 1,
        })
    }

    /// Row with `symbol` inserted at gap `j`; `j == len` appends.
    pub fn insert(&self, j: usize, symbol: u8) -> Result<Self> {
        if j > self.len() {
            return Err(Error::Pattern(format!(
                "insertion gap {j} out of range for row length {}",
                self.len
            )));
        }
        if self.len() == MAX_ROW_LEN {
            return Err(Error::RowTooLong {
                len: MAX_ROW_LEN + 1,
                max: MAX_ROW_LEN,
            });
        }
        let low = self.bits & mask_low(j);
        let high = (self.bits >> j) << (j + 1);
        Ok(BitRow {
            bits: low | high | (u64::from(symbol & 1) << j),
            len: self.len + 1,
        })
    }

    /// Symbols left to right.
    pub fn iter(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len()).map(move |j| self.get(j))
    }
}

fn mask_low(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Symbol-wise lexicographic order; a proper prefix sorts first.
impl Ord for BitRow {
    fn cmp(&self, other: &Self) -> Ordering {
        let common = self.len().min(other.len());
        for j in 0..common {
            match self.get(j).cmp(&other.get(j)) {
                Ordering::Equal => {}
                unequal => return unequal,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for BitRow {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.iter() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitRow({self})")
    }
}

impl FromStr for BitRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut row = BitRow::default();
        for c in s.trim().chars() {
            match c {
                '0' => row.push(0)?,
                '1' => row.push(1)?,
                other => {
                    return Err(Error::Parse(format!("invalid row symbol {other:?}")));
                }
            }
        }
        Ok(row)
    }
}
