//! Code constructions over composite vectors, with encoders and decoders.

mod combined;
mod inner;
mod strand_loss;
mod vt;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::matrix::ChannelOutput;
use crate::vector::CompositeVector;

pub use combined::{CombinedCode, CombinedTrace, DriftCase};
pub use inner::{InnerCode, InnerVerdict};
pub use strand_loss::StrandLossCode;
pub use vt::{binary_vt_decode, row_syndrome, vector_syndrome, CompositeVtCode, VtDecodeTrace};

/// True iff every pair of distinct codewords is at least `2t + 1` apart in
/// the levelwise sum-of-differences metric, the separation a `t`-substitution
/// decoder needs.
pub fn min_l1_membership(codebook: &[CompositeVector], t: usize) -> Result<bool> {
    let need = 2 * t as u64 + 1;
    for (i, x) in codebook.iter().enumerate() {
        for y in &codebook[i + 1..] {
            if x.l1_distance(y)? < need {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A one-line description of a concrete code, as used by the CLI.
///
/// Text form: `kind M n t [a] [inner]`, e.g. `sl 5 4 1`, `vt 5 4 1 0`,
/// `ls 3 7 1 hamming`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CodeSpec {
    StrandLoss {
        m: u32,
        n: usize,
        t: usize,
    },
    CompositeVt {
        m: u32,
        n: usize,
        a: u32,
    },
    Combined {
        m: u32,
        n: usize,
        t: usize,
        inner: InnerSpec,
    },
}

/// Inner-code selector for the combined construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum InnerSpec {
    /// Parity-check code picked by length: locating code for n >= 3,
    /// repetition below.
    #[default]
    Auto,
    Hamming,
    Repetition,
}

impl InnerSpec {
    fn build(self, n: usize) -> Result<InnerCode> {
        match self {
            InnerSpec::Auto => InnerCode::for_length(n),
            InnerSpec::Hamming => InnerCode::shortened_hamming(n),
            InnerSpec::Repetition => InnerCode::repetition(n),
        }
    }
}

impl CodeSpec {
    pub fn m(&self) -> u32 {
        match *self {
            CodeSpec::StrandLoss { m, .. }
            | CodeSpec::CompositeVt { m, .. }
            | CodeSpec::Combined { m, .. } => m,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            CodeSpec::StrandLoss { n, .. }
            | CodeSpec::CompositeVt { n, .. }
            | CodeSpec::Combined { n, .. } => n,
        }
    }

    /// Validates parameters by constructing the underlying code.
    pub fn check(&self) -> Result<()> {
        match *self {
            CodeSpec::StrandLoss { m, n, t } => StrandLossCode::new(m, n, t).map(|_| ()),
            CodeSpec::CompositeVt { m, n, a } => CompositeVtCode::new(m, n, a).map(|_| ()),
            CodeSpec::Combined { m, n, t, inner } => {
                CombinedCode::new(m, n, t, inner.build(n)?).map(|_| ())
            }
        }
    }

    pub fn size(&self) -> Result<BigUint> {
        match *self {
            CodeSpec::StrandLoss { m, n, t } => Ok(StrandLossCode::new(m, n, t)?.size()),
            CodeSpec::CompositeVt { m, n, a } => Ok(CompositeVtCode::new(m, n, a)?.size()),
            CodeSpec::Combined { m, n, t, inner } => {
                Ok(CombinedCode::new(m, n, t, inner.build(n)?)?.size())
            }
        }
    }

    /// Maps a rank in `[0, size)` to the rank-th codeword in level order.
    pub fn unrank(&self, rank: &BigUint) -> Result<CompositeVector> {
        match *self {
            CodeSpec::StrandLoss { m, n, t } => StrandLossCode::new(m, n, t)?.unrank(rank),
            CodeSpec::CompositeVt { m, n, a } => CompositeVtCode::new(m, n, a)?.unrank(rank),
            CodeSpec::Combined { m, n, t, inner } => {
                CombinedCode::new(m, n, t, inner.build(n)?)?.unrank(rank)
            }
        }
    }

    pub fn contains(&self, x: &CompositeVector) -> Result<bool> {
        match *self {
            CodeSpec::StrandLoss { m, n, t } => Ok(StrandLossCode::new(m, n, t)?.contains(x)),
            CodeSpec::CompositeVt { m, n, a } => Ok(CompositeVtCode::new(m, n, a)?.contains(x)),
            CodeSpec::Combined { m, n, t, inner } => {
                Ok(CombinedCode::new(m, n, t, inner.build(n)?)?.contains(x))
            }
        }
    }

    pub fn decode(&self, received: &ChannelOutput) -> Result<CompositeVector> {
        match *self {
            CodeSpec::StrandLoss { m, n, t } => StrandLossCode::new(m, n, t)?.decode(received),
            CodeSpec::CompositeVt { m, n, a } => CompositeVtCode::new(m, n, a)?.decode(received),
            CodeSpec::Combined { m, n, t, inner } => {
                CombinedCode::new(m, n, t, inner.build(n)?)?.decode(received)
            }
        }
    }
}

impl fmt::Display for CodeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CodeSpec::StrandLoss { m, n, t } => write!(f, "sl {m} {n} {t}"),
            CodeSpec::CompositeVt { m, n, a } => write!(f, "vt {m} {n} 1 {a}"),
            CodeSpec::Combined { m, n, t, inner } => {
                write!(f, "ls {m} {n} {t}")?;
                match inner {
                    InnerSpec::Auto => Ok(()),
                    InnerSpec::Hamming => write!(f, " hamming"),
                    InnerSpec::Repetition => write!(f, " repetition"),
                }
            }
        }
    }
}

impl FromStr for CodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let num = |tok: &str, what: &str| -> Result<u64> {
            tok.parse()
                .map_err(|_| Error::Parse(format!("invalid {what} {tok:?}")))
        };
        match toks.as_slice() {
            ["sl", m, n, t] => Ok(CodeSpec::StrandLoss {
                m: num(m, "strand count")? as u32,
                n: num(n, "length")? as usize,
                t: num(t, "budget")? as usize,
            }),
            ["vt", m, n, t, a] => {
                if num(t, "budget")? != 1 {
                    return Err(Error::Config(
                        "the checksum construction corrects exactly one deletion".into(),
                    ));
                }
                Ok(CodeSpec::CompositeVt {
                    m: num(m, "strand count")? as u32,
                    n: num(n, "length")? as usize,
                    a: num(a, "residue")? as u32,
                })
            }
            ["ls", m, n, t, rest @ ..] => {
                let inner = match rest {
                    [] => InnerSpec::Auto,
                    ["hamming"] => InnerSpec::Hamming,
                    ["repetition"] => InnerSpec::Repetition,
                    other => {
                        return Err(Error::Parse(format!("unknown inner code {other:?}")));
                    }
                };
                Ok(CodeSpec::Combined {
                    m: num(m, "strand count")? as u32,
                    n: num(n, "length")? as usize,
                    t: num(t, "budget")? as usize,
                    inner,
                })
            }
            _ => Err(Error::Parse(format!("unrecognized code spec {s:?}"))),
        }
    }
}

/// Lexicographic odometer over `[0, max]^n`, used to walk digit grids.
pub(crate) struct DigitOdometer {
    max: u32,
    next: Option<Vec<u32>>,
}

impl DigitOdometer {
    pub(crate) fn new(max: u32, n: usize) -> Self {
        DigitOdometer {
            max,
            next: Some(vec![0; n]),
        }
    }
}

impl Iterator for DigitOdometer {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let digits = self.next.take()?;
        let mut succ = digits.clone();
        for j in (0..succ.len()).rev() {
            if succ[j] < self.max {
                succ[j] += 1;
                self.next = Some(succ);
                break;
            }
            succ[j] = 0;
        }
        Some(digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(m: u32, levels: &[u32]) -> CompositeVector {
        CompositeVector::new(m, levels.to_vec()).unwrap()
    }

    #[test]
    fn pairwise_separation_check() {
        let single = vec![vec_of(3, &[0, 0])];
        assert!(min_l1_membership(&single, 1).unwrap());
        let pair = vec![vec_of(3, &[0, 0]), vec_of(3, &[3, 0])];
        assert!(min_l1_membership(&pair, 1).unwrap());
        let close = vec![vec_of(3, &[0, 0]), vec_of(3, &[1, 1])];
        assert!(!min_l1_membership(&close, 1).unwrap());
    }

    #[test]
    fn grid_spaced_codebook_separates() {
        // Levels on a (2t+1) grid differ by at least 2t+1 wherever they differ.
        let t = 1;
        let book: Vec<CompositeVector> = CompositeVector::all(6, 2)
            .filter(|x| x.levels().iter().all(|&v| v % (2 * t + 1) == 0))
            .collect();
        assert!(min_l1_membership(&book, t as usize).unwrap());
    }

    #[test]
    fn code_spec_text_roundtrip() {
        for text in ["sl 5 4 1", "vt 5 4 1 0", "ls 3 7 1", "ls 3 7 1 hamming"] {
            let spec: CodeSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
            spec.check().unwrap();
        }
        assert!("vt 5 4 2 0".parse::<CodeSpec>().is_err());
        assert!("xx 1 1 1".parse::<CodeSpec>().is_err());
        assert!("ls 3 7 1 parity".parse::<CodeSpec>().is_err());
    }

    #[test]
    fn spec_unrank_walks_every_codeword() {
        for text in ["sl 3 2 1", "vt 2 3 1 0", "ls 3 3 1"] {
            let spec: CodeSpec = text.parse().unwrap();
            let size = spec.size().unwrap();
            let mut seen = Vec::new();
            let mut rank = BigUint::from(0u32);
            while rank < size {
                let word = spec.unrank(&rank).unwrap();
                assert!(spec.contains(&word).unwrap(), "{text} rank {rank}");
                seen.push(word);
                rank += 1u32;
            }
            seen.dedup();
            assert_eq!(BigUint::from(seen.len()), size, "{text}");
            assert!(spec.unrank(&size).is_err());
        }
    }

    #[test]
    fn digit_odometer_is_lexicographic() {
        let digits: Vec<Vec<u32>> = DigitOdometer::new(1, 2).collect();
        assert_eq!(digits, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let degenerate: Vec<Vec<u32>> = DigitOdometer::new(0, 3).collect();
        assert_eq!(degenerate, vec![vec![0, 0, 0]]);
    }
}
