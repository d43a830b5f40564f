//! Error types shared across the crate.

use thiserror::Error;

/// Reasons a decoder gives up instead of guessing.
///
/// Every decoder in this crate either returns a codeword of its code or one
/// of these. A returned codeword is always re-checked for membership, so a
/// successful decode is sound by construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeFailure {
    /// The received matrix has a row count the decoder cannot handle.
    #[error("received {got} rows, decodable range is [{min}, {max}]")]
    RowCount { got: usize, min: usize, max: usize },
    /// A row length is outside what the channel model allows.
    #[error("row {row} has length {len}, expected {expected}")]
    RowLength {
        row: usize,
        len: usize,
        expected: String,
    },
    /// More than one row lost a symbol; a single-deletion decoder needs at most one.
    #[error("{got} rows are one symbol short, at most one is correctable")]
    MultipleShortRows { got: usize },
    /// The recovered vector has the wrong checksum residue.
    #[error("syndrome {got} does not match the code parameter {expected}")]
    Syndrome { got: u32, expected: u32 },
    /// A recovered level fell outside [0, M].
    #[error("column {col} recovered level {level}, valid range is [0, {max}]")]
    LevelRange { col: usize, level: u32, max: u32 },
    /// The flagged column drifted by an amount no single substitution explains.
    #[error("column {col} is {delta} above a multiple of {step}, not a correctable drift")]
    ColumnDrift { col: usize, delta: u32, step: u32 },
    /// The inner code sees an error but cannot point at a unique column.
    #[error("inner code cannot locate the substituted column")]
    InnerUncorrectable,
    /// Everything was consistent locally, yet the result is not a codeword.
    #[error("recovered vector is not a codeword")]
    NotACodeword,
}

impl DecodeFailure {
    /// Stable machine-readable tag, used by the CLI failure record.
    pub fn slug(&self) -> &'static str {
        match self {
            DecodeFailure::RowCount { .. } => "row-count",
            DecodeFailure::RowLength { .. } => "row-length",
            DecodeFailure::MultipleShortRows { .. } => "multiple-short-rows",
            DecodeFailure::Syndrome { .. } => "syndrome-mismatch",
            DecodeFailure::LevelRange { .. } => "level-range",
            DecodeFailure::ColumnDrift { .. } => "column-drift",
            DecodeFailure::InnerUncorrectable => "inner-uncorrectable",
            DecodeFailure::NotACodeword => "not-a-codeword",
        }
    }
}

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A level exceeds the strand count it must live under.
    #[error("level {level} at column {col} exceeds the strand count {m}")]
    LevelOutOfRange { col: usize, level: u32, m: u32 },
    /// Two objects that must share a dimension do not.
    #[error("{what} mismatch: {left} vs {right}")]
    DimensionMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },
    /// Rows of a uniform matrix have differing lengths.
    #[error("row {row} has length {len}, the first row has {first}")]
    RaggedRows {
        row: usize,
        len: usize,
        first: usize,
    },
    /// An object that must be nonempty is empty.
    #[error("empty {0}")]
    Empty(&'static str),
    /// A row would exceed the packed width limit.
    #[error("row length {len} exceeds the packed maximum {max}")]
    RowTooLong { len: usize, max: usize },
    /// An error pattern is malformed or does not fit the matrix it targets.
    #[error("invalid pattern: {0}")]
    Pattern(String),
    /// A channel or code configuration is infeasible.
    #[error("invalid configuration: {0}")]
    Config(String),
    /// Requested enumeration or search would exceed the caller's cap.
    #[error("work would exceed the cap of {cap}")]
    CapExceeded { cap: u64 },
    /// A message digit does not fit the encoder's radix.
    #[error("digit {digit} at position {pos} is not below the radix {radix}")]
    DigitOutOfRange { pos: usize, digit: u32, radix: u32 },
    /// A message rank is not below the code size.
    #[error("rank {rank} is not below the code size {size}")]
    RankOutOfRange { rank: String, size: String },
    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A decoder declined to produce a codeword.
    #[error("decode failure: {0}")]
    Decode(#[from] DecodeFailure),
}

pub type Result<T> = std::result::Result<T, Error>;
