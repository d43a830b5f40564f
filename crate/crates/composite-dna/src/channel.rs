//! Error channels over strand matrices: substitution, strand loss,
//! deletion, insertion, and combined indels.
//!
//! A channel instance is an [`ErrorPattern`]: a kind plus exactly `t`
//! concrete events. Balls collect every output reachable from every
//! representation of a composite vector under every pattern of a kind,
//! which is what code-correctness arguments quantify over.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::{BigUint, RandBigInt};
use num_integer::binomial;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{enumerate_representations, ChannelOutput, StrandMatrix};
use crate::row::MAX_ROW_LEN;
use crate::vector::CompositeVector;

/// The five channel kinds.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ErrorKind {
    /// Symbols flip in place; strand count and lengths are preserved.
    Substitution,
    /// Whole strands disappear; the survivors keep their order.
    StrandLoss,
    /// Symbols vanish and the remainder of the strand shifts left.
    Deletion,
    /// Extra symbols appear; each strand grows by the insertions it takes.
    Insertion,
    /// Deletions and insertions mixed, deletions applied first.
    Indel,
}

impl ErrorKind {
    pub const ALL: [ErrorKind; 5] = [
        ErrorKind::Substitution,
        ErrorKind::StrandLoss,
        ErrorKind::Deletion,
        ErrorKind::Insertion,
        ErrorKind::Indel,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            ErrorKind::Substitution => "S",
            ErrorKind::StrandLoss => "L",
            ErrorKind::Deletion => "D",
            ErrorKind::Insertion => "I",
            ErrorKind::Indel => "ID",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ErrorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "S" => Ok(ErrorKind::Substitution),
            "L" => Ok(ErrorKind::StrandLoss),
            "D" => Ok(ErrorKind::Deletion),
            "I" => Ok(ErrorKind::Insertion),
            "ID" => Ok(ErrorKind::Indel),
            other => Err(Error::Parse(format!("unknown error kind {other:?}"))),
        }
    }
}

/// One concrete error event. Rows and columns are 0-based here; the text
/// form uses 1-based rows and columns.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ErrorEvent {
    /// Complement the symbol at `(row, col)`.
    Flip { row: usize, col: usize },
    /// Remove the whole strand `row`.
    DropRow { row: usize },
    /// Remove the symbol at `(row, col)`, positions in the original strand.
    Delete { row: usize, col: usize },
    /// Insert `symbol` at gap `gap` of strand `row`, positions in the
    /// strand as it stands when the event applies.
    Insert { row: usize, gap: usize, symbol: u8 },
}

/// A channel kind together with exactly `t` events.
///
/// Flip, drop, and delete events are unordered sets of distinct targets and
/// are kept sorted. Insert events act in sequence, so their order is part of
/// the pattern; for the indel kind, deletions act first (on original
/// positions) and insertions then act on the shortened strands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ErrorPattern {
    kind: ErrorKind,
    events: Vec<ErrorEvent>,
}

impl ErrorPattern {
    pub fn new(kind: ErrorKind, events: Vec<ErrorEvent>) -> Result<Self> {
        let mut deletes = Vec::new();
        let mut inserts = Vec::new();
        let mut others = Vec::new();
        for &e in &events {
            let allowed = match (kind, e) {
                (ErrorKind::Substitution, ErrorEvent::Flip { .. }) => true,
                (ErrorKind::StrandLoss, ErrorEvent::DropRow { .. }) => true,
                (ErrorKind::Deletion, ErrorEvent::Delete { .. }) => true,
                (ErrorKind::Insertion, ErrorEvent::Insert { .. }) => true,
                (ErrorKind::Indel, ErrorEvent::Delete { .. }) => true,
                (ErrorKind::Indel, ErrorEvent::Insert { .. }) => true,
                _ => false,
            };
            if !allowed {
                return Err(Error::Pattern(format!(
                    "event {e:?} does not belong to a {kind} pattern"
                )));
            }
            match e {
                ErrorEvent::Delete { .. } => deletes.push(e),
                ErrorEvent::Insert { .. } => inserts.push(e),
                ErrorEvent::Flip { .. } | ErrorEvent::DropRow { .. } => others.push(e),
            }
            if let ErrorEvent::Insert { symbol, .. } = e {
                if symbol > 1 {
                    return Err(Error::Pattern(format!(
                        "inserted symbol {symbol} is not binary"
                    )));
                }
            }
        }
        others.sort_unstable();
        deletes.sort_unstable();
        for pair in others.windows(2).chain(deletes.windows(2)) {
            if pair[0] == pair[1] {
                return Err(Error::Pattern(format!("duplicate event {:?}", pair[0])));
            }
        }
        let mut canon = others;
        canon.extend(deletes);
        canon.extend(inserts);
        Ok(ErrorPattern {
            kind,
            events: canon,
        })
    }

    pub fn kind(&self) -> ErrorKind {
        self.kind
    }

    /// Total number of events `t`.
    pub fn t(&self) -> usize {
        self.events.len()
    }

    pub fn events(&self) -> &[ErrorEvent] {
        &self.events
    }

    /// Runs the pattern against a concrete matrix.
    pub fn apply(&self, x: &StrandMatrix) -> Result<ChannelOutput> {
        let m = x.strand_count() as usize;
        let n = x.width();
        let mut rows = x.rows().to_vec();
        let mut dropped = Vec::new();
        for &e in &self.events {
            match e {
                ErrorEvent::Flip { row, col } => {
                    check_cell(row, col, m, n)?;
                    rows[row].flip(col);
                }
                ErrorEvent::DropRow { row } => {
                    if row >= m {
                        return Err(Error::Pattern(format!(
                            "row {} out of range for {m} strands",
                            row + 1
                        )));
                    }
                    dropped.push(row);
                }
                ErrorEvent::Delete { row, col } => {
                    check_cell(row, col, m, n)?;
                    rows[row] = rows[row].delete(adjusted_delete_pos(&self.events, row, col))?;
                }
                ErrorEvent::Insert { row, gap, symbol } => {
                    if row >= m {
                        return Err(Error::Pattern(format!(
                            "row {} out of range for {m} strands",
                            row + 1
                        )));
                    }
                    rows[row] = rows[row].insert(gap, symbol)?;
                }
            }
        }
        if !dropped.is_empty() {
            dropped.sort_unstable();
            let mut kept = Vec::with_capacity(m - dropped.len());
            for (i, row) in rows.into_iter().enumerate() {
                if dropped.binary_search(&i).is_err() {
                    kept.push(row);
                }
            }
            rows = kept;
        }
        Ok(ChannelOutput::new(rows))
    }
}

/// Delete positions are stated against the original strand; earlier
/// deletions in the same strand shift everything after them left.
fn adjusted_delete_pos(events: &[ErrorEvent], row: usize, col: usize) -> usize {
    let shift = events
        .iter()
        .filter(|e| matches!(e, ErrorEvent::Delete { row: r, col: c } if *r == row && *c < col))
        .count();
    col - shift
}

fn check_cell(row: usize, col: usize, m: usize, n: usize) -> Result<()> {
    if row >= m || col >= n {
        return Err(Error::Pattern(format!(
            "cell ({}, {}) out of range for a {m} x {n} matrix",
            row + 1,
            col + 1
        )));
    }
    Ok(())
}

/// Text form: header `kind t`, then one event per line. Rows and columns
/// are 1-based; insertion gaps count from 0. Indel lines carry a `D` or `I`
/// prefix.
impl fmt::Display for ErrorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.t())?;
        for &e in &self.events {
            match e {
                ErrorEvent::Flip { row, col } | ErrorEvent::Delete { row, col }
                    if self.kind != ErrorKind::Indel =>
                {
                    write!(f, "\n{} {}", row + 1, col + 1)?;
                }
                ErrorEvent::Delete { row, col } => {
                    write!(f, "\nD {} {}", row + 1, col + 1)?;
                }
                ErrorEvent::DropRow { row } => write!(f, "\n{}", row + 1)?,
                ErrorEvent::Insert { row, gap, symbol } => {
                    if self.kind == ErrorKind::Indel {
                        write!(f, "\nI {} {} {}", row + 1, gap, symbol)?;
                    } else {
                        write!(f, "\n{} {} {}", row + 1, gap, symbol)?;
                    }
                }
                ErrorEvent::Flip { .. } => unreachable!("flips only occur in S patterns"),
            }
        }
        Ok(())
    }
}

impl FromStr for ErrorPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lines = s.split('\n');
        let header = lines.next().unwrap_or("");
        let mut head = header.split_whitespace();
        let kind: ErrorKind = head
            .next()
            .ok_or_else(|| Error::Parse("missing pattern kind".into()))?
            .parse()?;
        let t: usize = head
            .next()
            .ok_or_else(|| Error::Parse("missing event count".into()))?
            .parse()
            .map_err(|_| Error::Parse("invalid event count".into()))?;
        if head.next().is_some() {
            return Err(Error::Parse("pattern header has trailing tokens".into()));
        }
        let mut events = Vec::with_capacity(t);
        for _ in 0..t {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {t} events")))?;
            events.push(parse_event(kind, line)?);
        }
        for leftover in lines {
            if !leftover.trim().is_empty() {
                return Err(Error::Parse("trailing content after last event".into()));
            }
        }
        ErrorPattern::new(kind, events)
    }
}

fn parse_event(kind: ErrorKind, line: &str) -> Result<ErrorEvent> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let num = |tok: &str| -> Result<usize> {
        tok.parse()
            .map_err(|_| Error::Parse(format!("invalid event field {tok:?}")))
    };
    let row1 = |tok: &str| -> Result<usize> {
        let v = num(tok)?;
        if v == 0 {
            return Err(Error::Parse("rows and columns are 1-based".into()));
        }
        Ok(v - 1)
    };
    match (kind, toks.as_slice()) {
        (ErrorKind::Substitution, [k, j]) => Ok(ErrorEvent::Flip {
            row: row1(k)?,
            col: row1(j)?,
        }),
        (ErrorKind::StrandLoss, [k]) => Ok(ErrorEvent::DropRow { row: row1(k)? }),
        (ErrorKind::Deletion, [k, j]) => Ok(ErrorEvent::Delete {
            row: row1(k)?,
            col: row1(j)?,
        }),
        (ErrorKind::Insertion, [k, h, s]) => Ok(ErrorEvent::Insert {
            row: row1(k)?,
            gap: num(h)?,
            symbol: num(s)? as u8,
        }),
        (ErrorKind::Indel, ["D", k, j]) => Ok(ErrorEvent::Delete {
            row: row1(k)?,
            col: row1(j)?,
        }),
        (ErrorKind::Indel, ["I", k, h, s]) => Ok(ErrorEvent::Insert {
            row: row1(k)?,
            gap: num(h)?,
            symbol: num(s)? as u8,
        }),
        _ => Err(Error::Parse(format!(
            "malformed {kind} event line {line:?}"
        ))),
    }
}

/// Channel parameters: a kind, an event budget, and the sampling seed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ChannelConfig {
    pub kind: ErrorKind,
    pub t: usize,
    pub seed: u64,
}

impl ChannelConfig {
    /// Checks that patterns with exactly `t` events exist for an `m x n`
    /// matrix and that no strand can outgrow the packed row limit.
    pub fn validate(&self, m: u32, n: usize) -> Result<()> {
        if m == 0 || n == 0 {
            return Err(Error::Config("matrix dimensions must be positive".into()));
        }
        if n > MAX_ROW_LEN {
            return Err(Error::RowTooLong {
                len: n,
                max: MAX_ROW_LEN,
            });
        }
        let cells = m as usize * n;
        match self.kind {
            ErrorKind::Substitution | ErrorKind::Deletion if self.t > cells => Err(Error::Config(
                format!("{} distinct cells needed, matrix has {cells}", self.t),
            )),
            ErrorKind::StrandLoss if self.t > m as usize => Err(Error::Config(format!(
                "cannot lose {} of {m} strands",
                self.t
            ))),
            ErrorKind::Insertion | ErrorKind::Indel if n + self.t > MAX_ROW_LEN => {
                Err(Error::RowTooLong {
                    len: n + self.t,
                    max: MAX_ROW_LEN,
                })
            }
            _ => Ok(()),
        }
    }
}

/// Draws a pattern uniformly from all patterns of the configured kind with
/// exactly `t` events on an `m x n` matrix. Pure in `(m, n, cfg)`: the rng
/// is rebuilt from the seed on a stream reserved for pattern sampling, so
/// the same seed can also drive representation sampling elsewhere.
pub fn sample_pattern(m: u32, n: usize, cfg: &ChannelConfig) -> Result<ErrorPattern> {
    cfg.validate(m, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(1);
    let cells = m as usize * n;
    let events = match cfg.kind {
        ErrorKind::Substitution => sample_cells(&mut rng, cells, n, cfg.t)
            .into_iter()
            .map(|(row, col)| ErrorEvent::Flip { row, col })
            .collect(),
        ErrorKind::Deletion => sample_cells(&mut rng, cells, n, cfg.t)
            .into_iter()
            .map(|(row, col)| ErrorEvent::Delete { row, col })
            .collect(),
        ErrorKind::StrandLoss => {
            let mut picked: Vec<usize> = rand::seq::index::sample(&mut rng, m as usize, cfg.t)
                .into_iter()
                .collect();
            picked.sort_unstable();
            picked
                .into_iter()
                .map(|row| ErrorEvent::DropRow { row })
                .collect()
        }
        ErrorKind::Insertion => sample_insertions(&mut rng, &vec![n; m as usize], cfg.t),
        ErrorKind::Indel => {
            // Split the budget in proportion to the exact number of patterns
            // per split, then sample each part.
            let weights: Vec<BigUint> = (0..=cfg.t)
                .map(|td| {
                    binomial(BigUint::from(cells), BigUint::from(td))
                        * insertion_sequences(cells - td.min(cells), m as usize, cfg.t - td)
                })
                .collect();
            let total: BigUint = weights.iter().sum();
            if total.is_zero() {
                return Err(Error::Config("no pattern fits this matrix".into()));
            }
            let mut draw = rng.gen_biguint_below(&total);
            let mut td = 0;
            for (i, w) in weights.iter().enumerate() {
                if draw < *w {
                    td = i;
                    break;
                }
                draw -= w;
            }
            let deletions = sample_cells(&mut rng, cells, n, td);
            let mut lens = vec![n; m as usize];
            for &(row, _) in &deletions {
                lens[row] -= 1;
            }
            let mut events: Vec<ErrorEvent> = deletions
                .into_iter()
                .map(|(row, col)| ErrorEvent::Delete { row, col })
                .collect();
            events.extend(sample_insertions(&mut rng, &lens, cfg.t - td));
            events
        }
    };
    ErrorPattern::new(cfg.kind, events)
}

/// Uniform set of `t` distinct cells, as sorted `(row, col)` pairs.
fn sample_cells<R: Rng>(rng: &mut R, cells: usize, n: usize, t: usize) -> Vec<(usize, usize)> {
    let mut picked: Vec<usize> = rand::seq::index::sample(rng, cells, t)
        .into_iter()
        .collect();
    picked.sort_unstable();
    picked.into_iter().map(|p| (p / n, p % n)).collect()
}

/// Uniform insertion sequence over strands whose current lengths are `lens`.
/// Each step has `(sum of lengths + strands) * 2` equally likely choices, a
/// count that does not depend on where earlier insertions landed, so
/// stepwise-uniform is uniform over whole sequences.
fn sample_insertions<R: Rng>(rng: &mut R, lens: &[usize], t: usize) -> Vec<ErrorEvent> {
    let mut lens = lens.to_vec();
    let mut events = Vec::with_capacity(t);
    for _ in 0..t {
        let gaps: usize = lens.iter().map(|&l| l + 1).sum();
        let c = rng.gen_range(0..gaps * 2);
        let symbol = (c % 2) as u8;
        let mut pos = c / 2;
        let mut row = 0;
        while pos > lens[row] {
            pos -= lens[row] + 1;
            row += 1;
        }
        events.push(ErrorEvent::Insert {
            row,
            gap: pos,
            symbol,
        });
        lens[row] += 1;
    }
    events
}

/// Number of insertion sequences of length `t` into `m` strands holding
/// `symbols` symbols in total.
fn insertion_sequences(symbols: usize, m: usize, t: usize) -> BigUint {
    let mut count = BigUint::from(1u32);
    for i in 0..t {
        count *= BigUint::from(2 * (symbols + m + i));
    }
    count
}

/// Exact number of patterns of a kind with exactly `t` events on an
/// `m x n` matrix.
pub fn pattern_count(kind: ErrorKind, t: usize, m: u32, n: usize) -> BigUint {
    let cells = m as usize * n;
    match kind {
        ErrorKind::Substitution | ErrorKind::Deletion => {
            binomial(BigUint::from(cells), BigUint::from(t))
        }
        ErrorKind::StrandLoss => binomial(BigUint::from(m), BigUint::from(t)),
        ErrorKind::Insertion => insertion_sequences(cells, m as usize, t),
        ErrorKind::Indel => (0..=t)
            .map(|td| {
                binomial(BigUint::from(cells), BigUint::from(td))
                    * insertion_sequences(cells.saturating_sub(td), m as usize, t - td)
            })
            .sum(),
    }
}

/// Everything reachable from `x` through exactly `t` errors of one kind,
/// over all representations of `x`. Outputs are ordered matrices; pass
/// `sorted_rows` to collapse them to row-set semantics instead.
pub fn error_ball(
    x: &CompositeVector,
    t: usize,
    kind: ErrorKind,
    cap: u64,
) -> Result<BTreeSet<ChannelOutput>> {
    error_ball_with(x, t, kind, BallSemantics::OrderedRows, cap)
}

/// Output identity used when collecting a ball.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BallSemantics {
    /// Outputs are row sequences; two outputs differing only in row order
    /// stay distinct.
    OrderedRows,
    /// Outputs are row multisets: rows are sorted before collection.
    SortedRows,
}

pub fn error_ball_with(
    x: &CompositeVector,
    t: usize,
    kind: ErrorKind,
    semantics: BallSemantics,
    cap: u64,
) -> Result<BTreeSet<ChannelOutput>> {
    let n = x.len();
    if n > MAX_ROW_LEN {
        return Err(Error::RowTooLong {
            len: n,
            max: MAX_ROW_LEN,
        });
    }
    if matches!(kind, ErrorKind::Insertion | ErrorKind::Indel) && n + t > MAX_ROW_LEN {
        return Err(Error::RowTooLong {
            len: n + t,
            max: MAX_ROW_LEN,
        });
    }
    let patterns = pattern_count(kind, t, x.m(), n);
    if patterns.is_zero() {
        return Ok(BTreeSet::new());
    }
    if x.representation_count() * patterns > BigUint::from(cap) {
        return Err(Error::CapExceeded { cap });
    }
    let reps: Vec<ChannelOutput> = enumerate_representations(x, cap)?
        .map(ChannelOutput::from)
        .collect();
    let finish = |set: BTreeSet<ChannelOutput>| match semantics {
        BallSemantics::OrderedRows => set,
        BallSemantics::SortedRows => set.iter().map(ChannelOutput::sorted).collect(),
    };
    let ball = match kind {
        ErrorKind::Substitution => {
            let cells = x.m() as usize * n;
            let mut set = BTreeSet::new();
            for rep in &reps {
                for combo in (0..cells).combinations(t) {
                    let mut rows = rep.rows().to_vec();
                    for p in combo {
                        rows[p / n].flip(p % n);
                    }
                    set.insert(ChannelOutput::new(rows));
                }
            }
            set
        }
        ErrorKind::StrandLoss => expand_levels(reps, t, expand_drop),
        ErrorKind::Deletion => expand_levels(reps, t, expand_delete),
        ErrorKind::Insertion => expand_levels(reps, t, expand_insert),
        ErrorKind::Indel => {
            let mut delete_level: BTreeSet<ChannelOutput> = reps.into_iter().collect();
            let mut union = BTreeSet::new();
            for td in 0..=t {
                if td > 0 {
                    delete_level = expand_delete(&delete_level);
                    if delete_level.is_empty() {
                        break;
                    }
                }
                let mut level = delete_level.clone();
                for _ in 0..(t - td) {
                    level = expand_insert(&level);
                }
                union.extend(level);
            }
            union
        }
    };
    Ok(finish(ball))
}

fn expand_levels(
    reps: Vec<ChannelOutput>,
    t: usize,
    step: fn(&BTreeSet<ChannelOutput>) -> BTreeSet<ChannelOutput>,
) -> BTreeSet<ChannelOutput> {
    let mut level: BTreeSet<ChannelOutput> = reps.into_iter().collect();
    for _ in 0..t {
        level = step(&level);
    }
    level
}

/// One more lost strand, every way.
fn expand_drop(level: &BTreeSet<ChannelOutput>) -> BTreeSet<ChannelOutput> {
    let mut next = BTreeSet::new();
    for out in level {
        for i in 0..out.row_count() {
            let mut rows = out.rows().to_vec();
            rows.remove(i);
            next.insert(ChannelOutput::new(rows));
        }
    }
    next
}

/// One more deleted symbol, every way. Stepping a set of outputs one
/// deletion at a time visits exactly the outputs of the distinct-cell
/// patterns: a set of deleted original cells and a sequence of stepwise
/// deletions are two descriptions of the same surviving symbols.
fn expand_delete(level: &BTreeSet<ChannelOutput>) -> BTreeSet<ChannelOutput> {
    let mut next = BTreeSet::new();
    for out in level {
        for (i, row) in out.rows().iter().enumerate() {
            for p in 0..row.len() {
                let mut rows = out.rows().to_vec();
                rows[i] = row.delete(p).expect("position in range");
                next.insert(ChannelOutput::new(rows));
            }
        }
    }
    next
}

/// One more inserted symbol, every way.
fn expand_insert(level: &BTreeSet<ChannelOutput>) -> BTreeSet<ChannelOutput> {
    let mut next = BTreeSet::new();
    for out in level {
        for (i, row) in out.rows().iter().enumerate() {
            for gap in 0..=row.len() {
                for symbol in 0..=1u8 {
                    let mut rows = out.rows().to_vec();
                    rows[i] = row.insert(gap, symbol).expect("gap in range");
                    next.insert(ChannelOutput::new(rows));
                }
            }
        }
    }
    next
}

/// Whether the exactly-`t` balls of `x` and `y` share no output. The cap
/// bounds the enumeration work per ball.
pub fn balls_disjoint(
    x: &CompositeVector,
    y: &CompositeVector,
    t: usize,
    kind: ErrorKind,
    cap: u64,
) -> Result<bool> {
    check_comparable(x, y)?;
    let bx = error_ball(x, t, kind, cap)?;
    let by = error_ball(y, t, kind, cap)?;
    Ok(bx.intersection(&by).next().is_none())
}

fn check_comparable(x: &CompositeVector, y: &CompositeVector) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            what: "length",
            left: x.len(),
            right: y.len(),
        });
    }
    if x.m() != y.m() {
        return Err(Error::DimensionMismatch {
            what: "strand count",
            left: x.m() as usize,
            right: y.m() as usize,
        });
    }
    Ok(())
}

/// Everything reachable from `x` through at most `t` errors of one kind:
/// the union of the exact balls over radii `0..=t`, radius zero being the
/// representations themselves.
pub fn error_ball_upto(
    x: &CompositeVector,
    t: usize,
    kind: ErrorKind,
    cap: u64,
) -> Result<BTreeSet<ChannelOutput>> {
    let mut union: BTreeSet<ChannelOutput> = enumerate_representations(x, cap)?
        .map(ChannelOutput::from)
        .collect();
    for radius in 1..=t {
        union.extend(error_ball(x, radius, kind, cap)?);
    }
    Ok(union)
}

/// Whether the at-most-`t` balls of `x` and `y` share no output. This is
/// the confusability notion a `t`-error-correcting code needs: a decoder
/// must also cope with fewer than `t` errors, and collisions can pair
/// different radii, e.g. one substitution carries a representation of one
/// vector onto an intact representation of another, which every
/// exactly-`t` comparison misses.
pub fn balls_disjoint_upto(
    x: &CompositeVector,
    y: &CompositeVector,
    t: usize,
    kind: ErrorKind,
    cap: u64,
) -> Result<bool> {
    if x == y {
        return Ok(false);
    }
    check_comparable(x, y)?;
    let bx = error_ball_upto(x, t, kind, cap)?;
    let by = error_ball_upto(y, t, kind, cap)?;
    Ok(bx.intersection(&by).next().is_none())
}

/// Exact size of the single-deletion ball of `x`:
/// `m * sum_{y in V(x)} runs(y) * prod_j C(m - 1, x_j - y_j)`,
/// summing over the candidate rows `V(x)`.
pub fn single_deletion_ball_size(x: &CompositeVector) -> Result<BigUint> {
    let m_less = BigUint::from(x.m() - 1);
    let mut total = BigUint::zero();
    for y in x.candidate_rows()? {
        let weight: BigUint = x
            .levels()
            .iter()
            .enumerate()
            .map(|(j, &xj)| binomial(m_less.clone(), BigUint::from(xj - u32::from(y.get(j)))))
            .product();
        total += BigUint::from(y.run_count()? as u64) * weight;
    }
    Ok(total * BigUint::from(x.m()))
}
