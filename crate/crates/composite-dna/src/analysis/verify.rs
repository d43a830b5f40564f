//! Exhaustive verification of the separation claims and the
//! single-deletion ball-size formula on small parameter grids.

use itertools::Itertools;

use crate::analysis::report::ClaimRecord;
use crate::channel::{balls_disjoint_upto, error_ball, single_deletion_ball_size, ErrorKind};
use crate::error::{Error, Result};
use crate::vector::CompositeVector;

/// Parameter grid for the sweeps: all `1 <= m <= max_m`, `1 <= n <= max_n`,
/// and the listed radii.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyGrid {
    pub max_m: u32,
    pub max_n: usize,
    pub ts: Vec<usize>,
}

impl VerifyGrid {
    pub fn new(max_m: u32, max_n: usize, ts: Vec<usize>) -> Self {
        VerifyGrid { max_m, max_n, ts }
    }

    /// Desk-size grid: strand counts up to 3, lengths up to 2, radii 1 and 2.
    pub fn small() -> Self {
        VerifyGrid::new(3, 2, vec![1, 2])
    }

    /// Grid with no instances at all.
    pub fn empty() -> Self {
        VerifyGrid::new(0, 0, vec![])
    }

    fn dims(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        (1..=self.max_m).cartesian_product(1..=self.max_n)
    }
}

fn levels_text(x: &CompositeVector) -> String {
    format!("({})", x.levels().iter().join(" "))
}

/// Sweeps one (claim, m, n, t) instance over all distinct vector pairs.
/// `verdicts` returns (claimed, observed) per pair.
fn sweep_pairs<F>(claim: &str, m: u32, n: usize, t: usize, mut verdicts: F) -> Result<ClaimRecord>
where
    F: FnMut(&CompositeVector, &CompositeVector) -> Result<(bool, bool)>,
{
    let vectors: Vec<CompositeVector> = CompositeVector::all(m, n).collect();
    let mut record = ClaimRecord {
        claim: claim.into(),
        m,
        n,
        t,
        pairs: 0,
        counterexamples: Vec::new(),
        complete: true,
    };
    'outer: for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            match verdicts(&vectors[i], &vectors[j]) {
                Ok((claimed, observed)) => {
                    record.pairs += 1;
                    if claimed != observed {
                        record.counterexamples.push(format!(
                            "x={} y={} claimed={claimed} observed={observed}",
                            levels_text(&vectors[i]),
                            levels_text(&vectors[j])
                        ));
                    }
                }
                Err(Error::CapExceeded { .. }) => {
                    record.complete = false;
                    break 'outer;
                }
                Err(other) => return Err(other),
            }
        }
    }
    Ok(record)
}

/// Substitution separation: sum-metric distance at least `2t + 1` must
/// coincide with disjoint substitution balls at every radius up to `t`.
pub fn verify_substitution_claim(m: u32, n: usize, t: usize, cap: u64) -> Result<ClaimRecord> {
    sweep_pairs("1", m, n, t, |x, y| {
        let claimed = x.l1_distance(y)? >= 2 * t as u64 + 1;
        let observed = balls_disjoint_upto(x, y, t, ErrorKind::Substitution, cap)?;
        Ok((claimed, observed))
    })
}

/// Loss separation: max-metric distance at least `t + 1` must coincide with
/// disjoint loss balls at every radius up to `t`.
pub fn verify_loss_claim(m: u32, n: usize, t: usize, cap: u64) -> Result<ClaimRecord> {
    sweep_pairs("2", m, n, t, |x, y| {
        let claimed = x.linf_distance(y)? >= t as u32 + 1;
        let observed = balls_disjoint_upto(x, y, t, ErrorKind::StrandLoss, cap)?;
        Ok((claimed, observed))
    })
}

/// Single-error equivalence: deletion balls, insertion balls, and
/// one-of-each balls must agree on which pairs they separate.
pub fn verify_deletion_equivalence_claim(m: u32, n: usize, cap: u64) -> Result<ClaimRecord> {
    let vectors: Vec<CompositeVector> = CompositeVector::all(m, n).collect();
    let mut record = ClaimRecord {
        claim: "3".into(),
        m,
        n,
        t: 1,
        pairs: 0,
        counterexamples: Vec::new(),
        complete: true,
    };
    'outer: for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let x = &vectors[i];
            let y = &vectors[j];
            let verdicts = [ErrorKind::Deletion, ErrorKind::Insertion, ErrorKind::Indel]
                .map(|kind| balls_disjoint_upto(x, y, 1, kind, cap));
            let mut resolved = Vec::with_capacity(3);
            for verdict in verdicts {
                match verdict {
                    Ok(v) => resolved.push(v),
                    Err(Error::CapExceeded { .. }) => {
                        record.complete = false;
                        break 'outer;
                    }
                    Err(other) => return Err(other),
                }
            }
            record.pairs += 1;
            let [del, ins, both] = resolved[..] else {
                unreachable!()
            };
            if !(del == ins && ins == both) {
                record.counterexamples.push(format!(
                    "x={} y={} deletion={del} insertion={ins} one-of-each={both}",
                    levels_text(x),
                    levels_text(y)
                ));
            }
        }
    }
    Ok(record)
}

/// Checks the closed-form single-deletion ball size against enumeration for
/// every vector in `[0, m]^n`.
pub fn verify_ball_formula(m: u32, n: usize, cap: u64) -> Result<ClaimRecord> {
    let mut record = ClaimRecord {
        claim: "ball-size".into(),
        m,
        n,
        t: 1,
        pairs: 0,
        counterexamples: Vec::new(),
        complete: true,
    };
    for x in CompositeVector::all(m, n) {
        match error_ball(&x, 1, ErrorKind::Deletion, cap) {
            Ok(ball) => {
                record.pairs += 1;
                let formula = single_deletion_ball_size(&x)?;
                let listed = ball.len();
                if formula != listed.into() {
                    record.counterexamples.push(format!(
                        "x={} formula={formula} enumerated={listed}",
                        levels_text(&x)
                    ));
                }
            }
            Err(Error::CapExceeded { .. }) => {
                record.complete = false;
                break;
            }
            Err(other) => return Err(other),
        }
    }
    Ok(record)
}

/// Runs the substitution and loss sweeps over a grid, skipping radii the
/// channel cannot realize (more losses than strands, or more flips than
/// cells), plus the single-error equivalence wherever radius 1 is in play.
pub fn verify_claims(grid: &VerifyGrid, cap: u64) -> Result<Vec<ClaimRecord>> {
    let mut records = Vec::new();
    for (m, n) in grid.dims() {
        for &t in &grid.ts {
            if t as u64 <= m as u64 * n as u64 {
                records.push(verify_substitution_claim(m, n, t, cap)?);
            }
            if t as u64 <= m as u64 {
                records.push(verify_loss_claim(m, n, t, cap)?);
            }
        }
        if grid.ts.contains(&1) {
            records.push(verify_deletion_equivalence_claim(m, n, cap)?);
        }
    }
    Ok(records)
}
