//! Property tests: metric axioms, syndrome bookkeeping, and decoder
//! soundness/roundtrip guarantees under randomized channels.

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use composite_dna::channel::{error_ball, sample_pattern};
use composite_dna::codes::{row_syndrome, vector_syndrome, CompositeVtCode, StrandLossCode};
use composite_dna::matrix::enumerate_representations;
use composite_dna::{
    BitRow, ChannelConfig, ChannelOutput, CodeSpec, CompositeVector, ErrorKind, StrandMatrix,
};

/// A vector with 1 <= M <= 5 and 1 <= n <= 5.
fn any_vector() -> impl Strategy<Value = CompositeVector> {
    (1u32..=5, 1usize..=5)
        .prop_flat_map(|(m, n)| (Just(m), prop::collection::vec(0..=m, n)))
        .prop_map(|(m, levels)| CompositeVector::new(m, levels).unwrap())
}

/// A second vector over the same grid as the first.
fn vector_pair() -> impl Strategy<Value = (CompositeVector, CompositeVector)> {
    (1u32..=5, 1usize..=5).prop_flat_map(|(m, n)| {
        let one = prop::collection::vec(0..=m, n)
            .prop_map(move |levels| CompositeVector::new(m, levels).unwrap());
        (one.clone(), one)
    })
}

fn vector_triple() -> impl Strategy<Value = (CompositeVector, CompositeVector, CompositeVector)> {
    (1u32..=5, 1usize..=5).prop_flat_map(|(m, n)| {
        let one = prop::collection::vec(0..=m, n)
            .prop_map(move |levels| CompositeVector::new(m, levels).unwrap());
        (one.clone(), one.clone(), one)
    })
}

fn rng_from(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #[test]
    fn l1_and_linf_are_metrics((x, y, z) in vector_triple()) {
        let d1 = |a: &CompositeVector, b: &CompositeVector| a.l1_distance(b).unwrap();
        let di = |a: &CompositeVector, b: &CompositeVector| a.linf_distance(b).unwrap();
        prop_assert_eq!(d1(&x, &y), d1(&y, &x));
        prop_assert_eq!(di(&x, &y), di(&y, &x));
        prop_assert_eq!(d1(&x, &y) == 0, x == y);
        prop_assert_eq!(di(&x, &y) == 0, x == y);
        prop_assert!(d1(&x, &z) <= d1(&x, &y) + d1(&y, &z));
        prop_assert!(di(&x, &z) <= di(&x, &y) + di(&y, &z));
    }

    #[test]
    fn linf_bounds_l1_on_both_sides((x, y) in vector_pair()) {
        let d1 = x.l1_distance(&y).unwrap();
        let di = x.linf_distance(&y).unwrap() as u64;
        let n = x.len() as u64;
        prop_assert!(di <= d1);
        prop_assert!(d1 <= n * di);
    }

    #[test]
    fn row_order_never_changes_column_sums(x in any_vector(), seed in any::<u64>()) {
        let mut rng = rng_from(seed);
        let matrix = StrandMatrix::sample(&x, &mut rng).unwrap();
        let mut rows = matrix.rows().to_vec();
        rows.shuffle(&mut rng);
        let shuffled = StrandMatrix::new(rows).unwrap();
        prop_assert_eq!(shuffled.column_sums(), x);
    }

    #[test]
    fn row_syndromes_add_up_to_the_vector_syndrome(x in any_vector(), seed in any::<u64>()) {
        let mut rng = rng_from(seed);
        let matrix = StrandMatrix::sample(&x, &mut rng).unwrap();
        let modulus = x.len() as u32 + 1;
        let total: u32 = matrix
            .rows()
            .iter()
            .map(|row| row_syndrome(row, modulus))
            .sum();
        prop_assert_eq!(total % modulus, vector_syndrome(&x));
    }

    #[test]
    fn loss_decoder_roundtrips_within_its_radius(
        (m, t) in (2u32..=6).prop_flat_map(|m| (Just(m), 1usize..m as usize)),
        n in 1usize..=4,
        digit_seed in any::<u64>(),
        channel_seed in any::<u64>(),
    ) {
        let code = StrandLossCode::new(m, n, t).unwrap();
        let mut rng = rng_from(digit_seed);
        let digits: Vec<u32> = (0..n)
            .map(|_| rand::Rng::gen_range(&mut rng, 0..code.radix()))
            .collect();
        let word = code.encode(&digits).unwrap();
        let mut chan = rng_from(channel_seed);
        let rep = StrandMatrix::sample(&word, &mut chan).unwrap();
        let losses = rand::Rng::gen_range(&mut chan, 0..=t);
        let cfg = ChannelConfig {
            kind: ErrorKind::StrandLoss,
            t: losses,
            seed: channel_seed,
        };
        let received = sample_pattern(m, n, &cfg).unwrap().apply(&rep).unwrap();
        prop_assert_eq!(code.decode(&received).unwrap(), word);
    }

    #[test]
    fn checksum_decoder_roundtrips_under_one_deletion(
        (m, n, a) in (1u32..=3, 2usize..=5)
            .prop_flat_map(|(m, n)| (Just(m), Just(n), 0u32..=n as u32)),
        rank_seed in any::<u64>(),
        channel_seed in any::<u64>(),
    ) {
        let code = CompositeVtCode::new(m, n, a).unwrap();
        let size = u64::try_from(code.size()).unwrap();
        prop_assume!(size > 0);
        let word = code.unrank(&BigUint::from(rank_seed % size)).unwrap();
        let mut chan = rng_from(channel_seed);
        let rep = StrandMatrix::sample(&word, &mut chan).unwrap();
        let cfg = ChannelConfig {
            kind: ErrorKind::Deletion,
            t: 1,
            seed: channel_seed,
        };
        let received = sample_pattern(m, n, &cfg).unwrap().apply(&rep).unwrap();
        prop_assert_eq!(code.decode(&received).unwrap(), word.clone());
        // The clean path must accept the untouched representation too.
        let intact = ChannelOutput::new(rep.rows().to_vec());
        prop_assert_eq!(code.decode(&intact).unwrap(), word);
    }

    #[test]
    fn combined_decoder_roundtrips_under_losses_plus_one_flip(
        (m, t) in prop::sample::select(vec![(3u32, 1usize), (4, 1), (5, 1), (5, 2)]),
        n in 3usize..=5,
        rank_seed in any::<u64>(),
        channel_seed in any::<u64>(),
    ) {
        let spec = CodeSpec::Combined {
            m,
            n,
            t,
            inner: Default::default(),
        };
        let size = u64::try_from(spec.size().unwrap()).unwrap();
        let word = spec.unrank(&BigUint::from(rank_seed % size)).unwrap();
        let mut chan = rng_from(channel_seed);
        let rep = StrandMatrix::sample(&word, &mut chan).unwrap();
        let losses = rand::Rng::gen_range(&mut chan, 0..=t);
        let cfg = ChannelConfig {
            kind: ErrorKind::StrandLoss,
            t: losses,
            seed: channel_seed,
        };
        let lossy = sample_pattern(m, n, &cfg).unwrap().apply(&rep).unwrap();
        let mut rows = lossy.rows().to_vec();
        if rand::Rng::gen_bool(&mut chan, 0.5) {
            let k = rand::Rng::gen_range(&mut chan, 0..rows.len());
            let j = rand::Rng::gen_range(&mut chan, 0..n);
            rows[k].flip(j);
        }
        let received = ChannelOutput::new(rows);
        prop_assert_eq!(spec.decode(&received).unwrap(), word);
    }

    /// Whatever bits arrive, a decoder that answers must answer with a
    /// codeword of its own code.
    #[test]
    fn decode_success_implies_codebook_membership(
        spec in prop::sample::select(vec![
            "sl 4 3 1", "sl 5 3 2", "vt 2 3 1 0", "vt 3 4 1 2", "ls 3 4 1", "ls 5 3 1",
        ]),
        rows in prop::collection::vec(
            prop::collection::vec(prop::bool::ANY, 0..=5),
            0..=6
        ),
    ) {
        let spec: CodeSpec = spec.parse().unwrap();
        let rows: Vec<BitRow> = rows
            .into_iter()
            .map(|bits| BitRow::from_symbols(bits.into_iter().map(u8::from)).unwrap())
            .collect();
        let received = ChannelOutput::new(rows);
        if let Ok(word) = spec.decode(&received) {
            prop_assert!(spec.contains(&word).unwrap());
        }
    }

    #[test]
    fn every_sampled_outcome_lies_in_the_exact_ball(
        (m, n) in (1u32..=2, 1usize..=3),
        kind in prop::sample::select(vec![
            ErrorKind::Substitution,
            ErrorKind::StrandLoss,
            ErrorKind::Deletion,
            ErrorKind::Insertion,
            ErrorKind::Indel,
        ]),
        t in 1usize..=2,
        levels_seed in any::<u64>(),
        channel_seed in any::<u64>(),
    ) {
        let mut rng = rng_from(levels_seed);
        let levels: Vec<u32> = (0..n).map(|_| rand::Rng::gen_range(&mut rng, 0..=m)).collect();
        let x = CompositeVector::new(m, levels).unwrap();
        let cfg = ChannelConfig { kind, t, seed: channel_seed };
        prop_assume!(cfg.validate(m, n).is_ok());
        let rep = StrandMatrix::sample(&x, &mut rng).unwrap();
        let received = sample_pattern(m, n, &cfg).unwrap().apply(&rep).unwrap();
        let ball = error_ball(&x, t, kind, 1_000_000).unwrap();
        prop_assert!(ball.contains(&received));
    }

    #[test]
    fn unrank_agrees_with_codeword_enumeration(
        spec in prop::sample::select(vec!["sl 3 2 1", "vt 2 3 1 1", "ls 3 3 1"]),
        rank_seed in any::<u64>(),
    ) {
        let spec: CodeSpec = spec.parse().unwrap();
        let size = u64::try_from(spec.size().unwrap()).unwrap();
        let rank = rank_seed % size;
        let word = spec.unrank(&BigUint::from(rank)).unwrap();
        let nth = match spec {
            CodeSpec::StrandLoss { m, n, t } => StrandLossCode::new(m, n, t)
                .unwrap()
                .codewords()
                .nth(rank as usize),
            CodeSpec::CompositeVt { m, n, a } => CompositeVtCode::new(m, n, a)
                .unwrap()
                .codewords()
                .nth(rank as usize),
            CodeSpec::Combined { .. } => {
                // The combined codebook walker is exercised through unrank
                // order in unit tests; here cross-check membership only.
                prop_assert!(spec.contains(&word).unwrap());
                return Ok(());
            }
        };
        prop_assert_eq!(nth.unwrap(), word);
    }

    /// Exhaustive in enumeration, randomized in representation: every
    /// element of a radius-1 deletion ball is reachable, and reachable
    /// outputs are exactly the ball.
    #[test]
    fn deletion_ball_equals_reachable_outputs(
        (m, n) in (1u32..=2, 1usize..=3),
        levels_seed in any::<u64>(),
    ) {
        let mut rng = rng_from(levels_seed);
        let levels: Vec<u32> = (0..n).map(|_| rand::Rng::gen_range(&mut rng, 0..=m)).collect();
        let x = CompositeVector::new(m, levels).unwrap();
        let mut reached = std::collections::BTreeSet::new();
        for rep in enumerate_representations(&x, 1_000_000).unwrap() {
            for row in 0..m as usize {
                for col in 0..n {
                    let mut rows = rep.rows().to_vec();
                    rows[row] = rows[row].delete(col).unwrap();
                    reached.insert(ChannelOutput::new(rows));
                }
            }
        }
        let ball = error_ball(&x, 1, ErrorKind::Deletion, 1_000_000).unwrap();
        prop_assert_eq!(ball, reached);
    }
}
