//! Line-oriented report records: one parseable line per checked instance,
//! with an optional CSV rendering for tabular export.

use std::fmt;

use num_bigint::BigUint;

use crate::channel::ErrorKind;

/// Size bound versus achieved size for one parameter choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub kind: ErrorKind,
    pub m: u32,
    pub n: usize,
    pub t: usize,
    pub bound: BigUint,
    pub achieved: Option<BigUint>,
    pub method: String,
}

impl BoundReport {
    pub const CSV_HEADER: &'static str = "kind,M,n,t,bound,achieved,method";

    pub fn csv_row(&self) -> String {
        let achieved = self
            .achieved
            .as_ref()
            .map(BigUint::to_string)
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.kind.tag(),
            self.m,
            self.n,
            self.t,
            self.bound,
            achieved,
            self.method
        )
    }
}

impl fmt::Display for BoundReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kind={} M={} n={} t={} bound={}",
            self.kind.tag(),
            self.m,
            self.n,
            self.t,
            self.bound
        )?;
        if let Some(achieved) = &self.achieved {
            write!(f, " achieved={achieved}")?;
        }
        write!(f, " method={}", self.method)
    }
}

/// Result of sweeping one claimed equivalence over one parameter choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimRecord {
    /// Which check ran: "1", "2", "3", or "ball-size".
    pub claim: String,
    pub m: u32,
    pub n: usize,
    pub t: usize,
    /// Pairs (or single vectors, for ball-size) examined.
    pub pairs: u64,
    pub counterexamples: Vec<String>,
    /// False when a work cap stopped the sweep early.
    pub complete: bool,
}

impl ClaimRecord {
    pub const CSV_HEADER: &'static str = "claim,M,n,t,pairs,counterexamples,complete";

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.claim,
            self.m,
            self.n,
            self.t,
            self.pairs,
            self.counterexamples.len(),
            self.complete
        )
    }
}

impl fmt::Display for ClaimRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "claim={} M={} n={} t={} pairs={} counterexamples={} complete={}",
            self.claim,
            self.m,
            self.n,
            self.t,
            self.pairs,
            self.counterexamples.len(),
            self.complete
        )?;
        if !self.counterexamples.is_empty() {
            let shown: Vec<&str> = self
                .counterexamples
                .iter()
                .take(5)
                .map(String::as_str)
                .collect();
            write!(f, " examples=[{}]", shown.join(" | "))?;
        }
        Ok(())
    }
}

/// Per-cell versus global maximum-code accounting for one partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionReport {
    pub kind: ErrorKind,
    pub m: u32,
    pub n: usize,
    pub t: usize,
    pub cells: u64,
    pub cell_sum: u64,
    pub achieved: u64,
    pub method: &'static str,
    pub exact: bool,
}

impl PartitionReport {
    pub fn slack(&self) -> u64 {
        self.cell_sum.saturating_sub(self.achieved)
    }
}

impl fmt::Display for PartitionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "kind={} M={} n={} t={} cells={} cell-sum={} achieved={} slack={} method={} complete={}",
            self.kind.tag(),
            self.m,
            self.n,
            self.t,
            self.cells,
            self.cell_sum,
            self.achieved,
            self.slack(),
            self.method,
            self.exact
        )
    }
}
