//! Binary strand matrices and ragged channel outputs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};
use crate::row::{BitRow, MAX_ROW_LEN};
use crate::vector::CompositeVector;

/// A full set of `m` strands of uniform length `n`: one concrete binary
/// representation of a composite vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct StrandMatrix {
    rows: Vec<BitRow>,
}

impl StrandMatrix {
    pub fn new(rows: Vec<BitRow>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Empty("matrix"));
        }
        let first = rows[0].len();
        if first == 0 {
            return Err(Error::Empty("row"));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != first {
                return Err(Error::RaggedRows {
                    row: i + 1,
                    len: row.len(),
                    first,
                });
            }
        }
        Ok(StrandMatrix { rows })
    }

    /// Strand count `M`.
    pub fn strand_count(&self) -> u32 {
        u32::try_from(self.rows.len()).expect("strand count fits in u32")
    }

    /// Strand length `n`.
    pub fn width(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> BitRow {
        self.rows[i]
    }

    /// Per-position counts of ones across strands.
    pub fn column_sums(&self) -> CompositeVector {
        let sums = (0..self.width())
            .map(|j| self.rows.iter().map(|r| u32::from(r.get(j))).sum())
            .collect();
        CompositeVector::new(self.strand_count(), sums)
            .expect("column sums of a valid matrix are in range")
    }

    /// Whether this matrix realizes `x`. Dimension disagreement is an error,
    /// not a `false`, so shape bugs do not hide behind mismatched sums.
    pub fn is_representation_of(&self, x: &CompositeVector) -> Result<bool> {
        if self.strand_count() != x.m() {
            return Err(Error::DimensionMismatch {
                what: "strand count",
                left: self.rows.len(),
                right: x.m() as usize,
            });
        }
        if self.width() != x.len() {
            return Err(Error::DimensionMismatch {
                what: "length",
                left: self.width(),
                right: x.len(),
            });
        }
        Ok(&self.column_sums() == x)
    }

    /// Uniformly random representation of `x`: each position independently
    /// places its `x_j` ones on a uniform subset of the strands.
    pub fn sample<R: Rng + ?Sized>(x: &CompositeVector, rng: &mut R) -> Result<Self> {
        if x.len() > MAX_ROW_LEN {
            return Err(Error::RowTooLong {
                len: x.len(),
                max: MAX_ROW_LEN,
            });
        }
        let m = x.m() as usize;
        let mut rows = vec![BitRow::zeros(x.len())?; m];
        for j in 0..x.len() {
            let k = x.level(j) as usize;
            for i in rand::seq::index::sample(rng, m, k) {
                rows[i].flip(j);
            }
        }
        Ok(StrandMatrix { rows })
    }
}

/// What comes back from a channel: up to `m` strands whose lengths may
/// differ after deletions and insertions. Row order is part of the value;
/// call [`ChannelOutput::sorted`] for set semantics.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct ChannelOutput {
    rows: Vec<BitRow>,
}

impl ChannelOutput {
    pub fn new(rows: Vec<BitRow>) -> Self {
        ChannelOutput { rows }
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn max_width(&self) -> usize {
        self.rows.iter().map(BitRow::len).max().unwrap_or(0)
    }

    /// The shared row length, if rows are uniform and present.
    pub fn uniform_width(&self) -> Option<usize> {
        let first = self.rows.first()?.len();
        self.rows.iter().all(|r| r.len() == first).then_some(first)
    }

    /// Per-position counts of ones; the result's strand count is the row
    /// count here, not the original `m`.
    pub fn column_sums(&self) -> Result<CompositeVector> {
        self.to_matrix().map(|m| m.column_sums())
    }

    pub fn to_matrix(&self) -> Result<StrandMatrix> {
        StrandMatrix::new(self.rows.clone())
    }

    /// Canonical set form: rows in sorted order.
    pub fn sorted(&self) -> Self {
        let mut rows = self.rows.clone();
        rows.sort_unstable();
        ChannelOutput { rows }
    }
}

impl From<StrandMatrix> for ChannelOutput {
    fn from(m: StrandMatrix) -> Self {
        ChannelOutput { rows: m.rows }
    }
}

impl From<&StrandMatrix> for ChannelOutput {
    fn from(m: &StrandMatrix) -> Self {
        ChannelOutput {
            rows: m.rows.clone(),
        }
    }
}

/// Iterator over every representation of a fixed composite vector.
///
/// Positions act as odometer digits with the leftmost position most
/// significant; within a position, the column patterns step through the
/// `C(m, x_j)` masks in decreasing numeric order, so the very first matrix
/// packs every position's ones into the bottommost strands.
pub struct Representations {
    n: usize,
    m: usize,
    columns: Vec<Vec<u64>>,
    idx: Vec<usize>,
    done: bool,
}

/// Enumerates all representations of `x`, refusing to start when the exact
/// count `prod_j C(m, x_j)` exceeds `cap`.
pub fn enumerate_representations(x: &CompositeVector, cap: u64) -> Result<Representations> {
    if x.len() > MAX_ROW_LEN {
        return Err(Error::RowTooLong {
            len: x.len(),
            max: MAX_ROW_LEN,
        });
    }
    if x.m() as usize > MAX_ROW_LEN {
        return Err(Error::Config(format!(
            "enumeration packs columns into u64 words, strand count {} exceeds {}",
            x.m(),
            MAX_ROW_LEN
        )));
    }
    if x.representation_count() > BigUint::from(cap) {
        return Err(Error::CapExceeded { cap });
    }
    let columns = x
        .levels()
        .iter()
        .map(|&level| column_masks_desc(x.m() as usize, level as usize))
        .collect();
    Ok(Representations {
        n: x.len(),
        m: x.m() as usize,
        columns,
        idx: vec![0; x.len()],
        done: false,
    })
}

/// All `m`-bit masks with exactly `k` ones, in decreasing numeric order.
fn column_masks_desc(m: usize, k: usize) -> Vec<u64> {
    fn go(limit: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for p in (k - 1..limit).rev() {
            go(p, k - 1, acc | (1u64 << p), out);
        }
    }
    let mut out = Vec::new();
    go(m, k, 0, &mut out);
    out
}

impl Iterator for Representations {
    type Item = StrandMatrix;

    fn next(&mut self) -> Option<StrandMatrix> {
        if self.done {
            return None;
        }
        let mut rows = vec![BitRow::zeros(self.n).expect("width checked"); self.m];
        for j in 0..self.n {
            let mask = self.columns[j][self.idx[j]];
            for (i, row) in rows.iter_mut().enumerate() {
                if (mask >> i) & 1 == 1 {
                    row.flip(j);
                }
            }
        }
        // Advance the odometer, rightmost position fastest.
        self.done = true;
        for j in (0..self.n).rev() {
            if self.idx[j] + 1 < self.columns[j].len() {
                self.idx[j] += 1;
                self.done = false;
                break;
            }
            self.idx[j] = 0;
        }
        Some(StrandMatrix { rows })
    }
}

fn fmt_rows(rows: &[BitRow], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let width = rows.iter().map(BitRow::len).max().unwrap_or(0);
    write!(f, "{} {}", rows.len(), width)?;
    for row in rows {
        write!(f, "\n{row}")?;
    }
    Ok(())
}

/// Text form: header `m n`, then `m` lines of contiguous symbols.
impl fmt::Display for StrandMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(&self.rows, f)
    }
}

/// Text form: header `rows max_len`, then `rows` lines whose lengths may
/// differ; a fully deleted strand prints as a blank line.
impl fmt::Display for ChannelOutput {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rows(&self.rows, f)
    }
}

fn parse_rows(s: &str, uniform: bool) -> Result<Vec<BitRow>> {
    let mut parts = s.split('\n');
    let header = parts.next().unwrap_or("");
    let mut dims = header.split_whitespace();
    let count: usize = parse_dim(&mut dims, "row count")?;
    let width: usize = parse_dim(&mut dims, "width")?;
    if dims.next().is_some() {
        return Err(Error::Parse("matrix header has trailing tokens".into()));
    }
    let mut rows = Vec::with_capacity(count);
    for i in 0..count {
        let line = parts
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {count} rows, found {i}")))?;
        let row: BitRow = line.parse()?;
        if uniform && row.len() != width {
            return Err(Error::RaggedRows {
                row: i + 1,
                len: row.len(),
                first: width,
            });
        }
        if row.len() > width {
            return Err(Error::Parse(format!(
                "row {} is longer than the header width {width}",
                i + 1
            )));
        }
        rows.push(row);
    }
    for leftover in parts {
        if !leftover.trim().is_empty() {
            return Err(Error::Parse("trailing content after last row".into()));
        }
    }
    Ok(rows)
}

fn parse_dim<'a, I: Iterator<Item = &'a str>>(iter: &mut I, what: &str) -> Result<usize> {
    let tok = iter
        .next()
        .ok_or_else(|| Error::Parse(format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| Error::Parse(format!("invalid {what} {tok:?}")))
}

impl FromStr for StrandMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StrandMatrix::new(parse_rows(s, true)?)
    }
}

impl FromStr for ChannelOutput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(ChannelOutput::new(parse_rows(s, false)?))
    }
}
