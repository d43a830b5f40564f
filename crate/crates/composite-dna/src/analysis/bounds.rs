//! Closed-form size bounds for composite-vector codes, all in exact integer
//! arithmetic.

use num_bigint::BigUint;
use num_traits::One;

use crate::analysis::graph::{binary_deletion_max, SearchLimits};
use crate::error::{Error, Result};
use crate::vector::ceil_div;

fn check_dims(m: u32, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return Err(Error::Config(
            "strand count and length must be positive".into(),
        ));
    }
    Ok(())
}

/// Largest possible code correcting `t` strand losses:
/// `ceil((m + 1) / (t + 1))^n`. Levels on the `(t + 1)`-grid meet it with
/// equality.
pub fn strand_loss_bound(m: u32, n: usize, t: usize) -> Result<BigUint> {
    check_dims(m, n)?;
    let per_axis = ceil_div(&BigUint::from(m as u64 + 1), &BigUint::from(t as u64 + 1));
    Ok(per_axis.pow(n as u32))
}

/// Upper bound for codes correcting `t` symbol deletions:
/// `ceil((m + 1) / 2)^n` times the largest binary `t`-deletion code of
/// length `n`. Needs `t < n`, and an exact binary search result.
pub fn deletion_bound(m: u32, n: usize, t: usize, limits: &SearchLimits) -> Result<BigUint> {
    check_dims(m, n)?;
    if t >= n {
        return Err(Error::Config(format!(
            "deletion bound needs t < n, got t={t} n={n}"
        )));
    }
    let binary = binary_deletion_max(n, t, limits)?;
    if !binary.exact {
        return Err(Error::CapExceeded {
            cap: limits.node_budget,
        });
    }
    let per_axis = ceil_div(&BigUint::from(m as u64 + 1), &BigUint::from(2u32));
    Ok(per_axis.pow(n as u32) * BigUint::from(binary.size()))
}

/// Guaranteed size of the best checksum-residue code: at least the average
/// class size `ceil((m + 1)^n / (n + 1))`.
pub fn checksum_floor_bound(m: u32, n: usize) -> Result<BigUint> {
    check_dims(m, n)?;
    let space = BigUint::from(m as u64 + 1).pow(n as u32);
    Ok(ceil_div(&space, &BigUint::from(n as u64 + 1)))
}

/// Upper bound on binary single-deletion codes:
/// `floor((2^n - 2) / (n - 1))` for `n >= 2`.
pub fn single_deletion_upper_bound(n: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(Error::Config(format!(
            "single-deletion upper bound needs n >= 2, got {n}"
        )));
    }
    let numerator = (BigUint::one() << n) - 2u32;
    Ok(numerator / BigUint::from(n as u64 - 1))
}
