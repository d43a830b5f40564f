//! Axis-aligned partitions of the vector space `[0, m]^n` and the
//! bound-by-parts check: the largest code is at most the sum of the largest
//! codes inside the cells of any partition.

use num_bigint::BigUint;
use num_traits::One;

use crate::analysis::graph::{ConfusabilityGraph, SearchLimits};
use crate::analysis::report::PartitionReport;
use crate::channel::ErrorKind;
use crate::error::{Error, Result};
use crate::vector::CompositeVector;

/// Product partition: each column's level range `[0, m]` is split into
/// intervals, and a cell is one interval choice per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionScheme {
    m: u32,
    axes: Vec<Vec<(u32, u32)>>,
}

impl PartitionScheme {
    /// Builds a scheme from explicit per-column intervals (inclusive
    /// bounds), requiring each axis to tile `[0, m]` exactly.
    pub fn new(m: u32, axes: Vec<Vec<(u32, u32)>>) -> Result<Self> {
        if m == 0 || axes.is_empty() {
            return Err(Error::Config(
                "strand count and length must be positive".into(),
            ));
        }
        for (col, axis) in axes.iter().enumerate() {
            let mut expect = 0u64;
            if axis.is_empty() {
                return Err(Error::Config(format!(
                    "column {} has no intervals",
                    col + 1
                )));
            }
            for &(lo, hi) in axis {
                if lo as u64 != expect || hi < lo {
                    return Err(Error::Config(format!(
                        "column {} intervals do not tile [0, {m}] exactly",
                        col + 1
                    )));
                }
                expect = hi as u64 + 1;
            }
            if expect != m as u64 + 1 {
                return Err(Error::Config(format!(
                    "column {} intervals stop at {} instead of {m}",
                    col + 1,
                    expect - 1
                )));
            }
        }
        Ok(PartitionScheme { m, axes })
    }

    /// Intervals of width `t + 1` on every axis, matching the rounding
    /// regions of the loss decoder.
    pub fn strand_loss(m: u32, n: usize, t: usize) -> Result<Self> {
        let step = t as u32 + 1;
        let axis: Vec<(u32, u32)> = (0..=m)
            .step_by(step as usize)
            .map(|lo| (lo, m.min(lo + step - 1)))
            .collect();
        Self::new(m, vec![axis; n])
    }

    /// Width-2 intervals anchored on even levels; an even `m` leaves a
    /// width-1 cell at level zero.
    pub fn single_deletion(m: u32, n: usize) -> Result<Self> {
        let mut axis = Vec::new();
        if m % 2 == 0 {
            axis.push((0, 0));
            let mut lo = 1;
            while lo <= m {
                axis.push((lo, lo + 1));
                lo += 2;
            }
        } else {
            let mut lo = 0;
            while lo <= m {
                axis.push((lo, lo + 1));
                lo += 2;
            }
        }
        Self::new(m, vec![axis; n])
    }

    /// Every level in its own cell.
    pub fn singletons(m: u32, n: usize) -> Result<Self> {
        let axis: Vec<(u32, u32)> = (0..=m).map(|v| (v, v)).collect();
        Self::new(m, vec![axis; n])
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.axes.len()
    }

    pub fn cell_count(&self) -> BigUint {
        self.axes
            .iter()
            .fold(BigUint::one(), |acc, axis| acc * BigUint::from(axis.len()))
    }

    /// Walks all cells; each item gives the inclusive level range per
    /// column.
    pub fn cells(&self) -> impl Iterator<Item = Vec<(u32, u32)>> + '_ {
        let mut idx = vec![0usize; self.axes.len()];
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let cell: Vec<(u32, u32)> = idx
                .iter()
                .zip(&self.axes)
                .map(|(&i, axis)| axis[i])
                .collect();
            done = true;
            for j in (0..idx.len()).rev() {
                if idx[j] + 1 < self.axes[j].len() {
                    idx[j] += 1;
                    idx[j + 1..].iter_mut().for_each(|k| *k = 0);
                    done = false;
                    break;
                }
            }
            Some(cell)
        })
    }

    /// Vectors inside one cell, in lexicographic order.
    fn cell_vectors(&self, cell: &[(u32, u32)]) -> Vec<CompositeVector> {
        let mut levels: Vec<u32> = cell.iter().map(|&(lo, _)| lo).collect();
        let mut out = Vec::new();
        loop {
            out.push(
                CompositeVector::new(self.m, levels.clone())
                    .expect("cell levels stay within range"),
            );
            let mut advanced = false;
            for j in (0..levels.len()).rev() {
                if levels[j] < cell[j].1 {
                    levels[j] += 1;
                    for (slot, &(lo, _)) in levels[j + 1..].iter_mut().zip(&cell[j + 1..]) {
                        *slot = lo;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return out;
            }
        }
    }
}

/// Sums the largest per-cell codes of a partition and compares against the
/// global maximum: the sum can never fall below it.
pub fn partition_bound_check(
    scheme: &PartitionScheme,
    kind: ErrorKind,
    t: usize,
    limits: &SearchLimits,
) -> Result<PartitionReport> {
    let m = scheme.m();
    let n = scheme.n();
    let graph = match kind {
        ErrorKind::Substitution | ErrorKind::StrandLoss => {
            ConfusabilityGraph::metric(kind, m, n, t)?
        }
        _ => ConfusabilityGraph::enumerated(kind, m, n, t, limits.cap)?,
    };
    let index_of = |x: &CompositeVector| -> usize {
        x.levels()
            .iter()
            .fold(0usize, |acc, &v| acc * (m as usize + 1) + v as usize)
    };
    let mut cell_sum = 0u64;
    let mut cells = 0u64;
    let mut exact = true;
    for cell in scheme.cells() {
        cells += 1;
        let allowed: Vec<usize> = scheme.cell_vectors(&cell).iter().map(&index_of).collect();
        let best = graph.max_independent_set_among(&allowed, limits);
        exact &= best.exact;
        cell_sum += best.size() as u64;
    }
    let global = graph.max_independent_set(limits);
    exact &= global.exact;
    if exact && (global.size() as u64) > cell_sum {
        return Err(Error::Config(
            "partition accounting violated: global code exceeded the per-cell sum".into(),
        ));
    }
    Ok(PartitionReport {
        kind,
        m,
        n,
        t,
        cells,
        cell_sum,
        achieved: global.size() as u64,
        method: global.method(),
        exact,
    })
}
