//! Coding theory for composite DNA: vectors of per-position symbol counts
//! written as pools of binary strands.
//!
//! A composite vector over `[0, m]^n` stands for any `m x n` binary matrix
//! with those column sums. This crate models how such pools degrade
//! (substitutions, strand losses, symbol deletions and insertions), builds
//! codes that survive each channel, and checks size bounds and separation
//! claims by exhaustive enumeration at desk scale.
//!
//! Module map:
//! - [`row`], [`vector`], [`matrix`]: packed strands, level vectors, and the
//!   representation matrices connecting them.
//! - [`channel`]: error kinds, error patterns, seeded sampling, and exact
//!   error-ball enumeration.
//! - [`codes`]: the loss-rounding code, the checksum single-deletion code,
//!   and the combined loss-plus-substitution code, with encoders and
//!   decoders.
//! - [`analysis`]: closed-form bounds, confusability graphs with exact
//!   maximum-code search, partition accounting, and claim sweeps.

pub mod analysis;
pub mod channel;
pub mod codes;
pub mod error;
pub mod matrix;
pub mod row;
pub mod vector;

pub use analysis::{BoundReport, ClaimRecord, PartitionReport, SearchLimits};
pub use channel::{ChannelConfig, ErrorKind, ErrorPattern};
pub use codes::{CodeSpec, InnerSpec};
pub use error::{DecodeFailure, Error, Result};
pub use matrix::{ChannelOutput, StrandMatrix};
pub use row::BitRow;
pub use vector::CompositeVector;
