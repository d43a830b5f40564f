//! Bounds, exhaustive searches, and claim verification over small parameter
//! grids.

mod bounds;
mod graph;
mod partition;
mod report;
mod verify;

pub use bounds::{
    checksum_floor_bound, deletion_bound, single_deletion_upper_bound, strand_loss_bound,
};
pub use graph::{
    binary_deletion_max, exact_max_code, ConfusabilityGraph, MaxCodeResult, SearchLimits,
};
pub use partition::{partition_bound_check, PartitionScheme};
pub use report::{BoundReport, ClaimRecord, PartitionReport};
pub use verify::{
    verify_ball_formula, verify_claims, verify_deletion_equivalence_claim, verify_loss_claim,
    verify_substitution_claim, VerifyGrid,
};
