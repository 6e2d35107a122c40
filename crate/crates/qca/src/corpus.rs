//! Deterministic randomized corpora: double words over the four bundled
//! Cartan types (strong acceptance condition by construction), the graded
//! seeds they generate, and rank-2 seeds. Everything is driven by a seeded
//! RNG so suites are reproducible.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use crate::cartan::{validate_cartan, CartanData, DoubleWord};
use crate::samples;
use crate::seeds::{initial_seed, seed_from_cartan, QuantumSeed};

/// One corpus entry: a Cartan matrix with a double word satisfying the
/// strong acceptance condition and a nonempty exchangeable set.
#[derive(Clone, Debug)]
pub struct WordCase {
    pub label: String,
    pub cartan: CartanData,
    pub word: DoubleWord,
}

const TYPE_NAMES: [&str; 4] = ["A2", "B2", "G2", "A1~"];

fn cartan_by_index(i: usize) -> CartanData {
    let a = match i % 4 {
        0 => samples::cartan_a2(),
        1 => samples::cartan_b2(),
        2 => samples::cartan_g2(),
        _ => samples::cartan_a1_affine(),
    };
    validate_cartan(a).expect("bundled Cartan matrices are valid")
}

/// Generate `count` random double words, cycling through the four types.
/// The first `r` letters are a signed permutation of `1..=r`, which makes
/// the strong condition automatic; the tail is random. Words without
/// exchangeable indices are resampled.
pub fn word_corpus(count: usize, rng_seed: u64) -> Vec<WordCase> {
    let mut rng = StdRng::seed_from_u64(rng_seed);
    let mut out = Vec::with_capacity(count);
    for case in 0..count {
        let cartan = cartan_by_index(case);
        let r = cartan.rank();
        let word = loop {
            let mut head: Vec<i64> = (1..=r as i64).collect();
            head.shuffle(&mut rng);
            for letter in head.iter_mut() {
                if rng.gen_bool(0.5) {
                    *letter = -*letter;
                }
            }
            let extra = rng.gen_range(3..=5);
            for _ in 0..extra {
                let v = rng.gen_range(1..=r as i64);
                head.push(if rng.gen_bool(0.5) { v } else { -v });
            }
            let dw = DoubleWord::new(head, r).expect("letters in range");
            if !dw.ex().is_empty() {
                break dw;
            }
        };
        out.push(WordCase {
            label: format!("{}#{case}", TYPE_NAMES[case % 4]),
            cartan,
            word,
        });
    }
    out
}

/// The graded seeds generated by [`word_corpus`].
pub fn seed_corpus(count: usize, rng_seed: u64) -> Vec<(String, QuantumSeed)> {
    word_corpus(count, rng_seed)
        .into_iter()
        .map(|case| {
            let seed = seed_from_cartan(&case.cartan, &case.word)
                .expect("strong-condition words generate graded seeds");
            (case.label, seed)
        })
        .collect()
}

/// The three finite rank-2 seeds plus the affine one.
pub fn rank2_corpus() -> Vec<(String, QuantumSeed)> {
    [(1, 1, "A2"), (1, 2, "B2"), (1, 3, "G2"), (2, 2, "A1~")]
        .into_iter()
        .map(|(b, c, name)| {
            let seed = initial_seed(samples::rank2_pair(b, c), None)
                .expect("rank-2 pairs are compatible");
            (format!("rank2-{name}"), seed)
        })
        .collect()
}

/// A random mutation sequence over the seed's exchangeable labels.
pub fn random_sequence(rng: &mut StdRng, ex: &[usize], max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| *ex.choose(rng).expect("ex nonempty")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{check_word_condition, WordCondition};

    #[test]
    fn corpus_is_deterministic_and_strong() {
        let a = word_corpus(20, 7);
        let b = word_corpus(20, 7);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.word.letters(), y.word.letters());
            assert_eq!(
                check_word_condition(&x.cartan, &x.word),
                WordCondition::Strong
            );
            assert!(!x.word.ex().is_empty());
        }
    }

    #[test]
    fn seeds_build_from_every_case() {
        for (label, seed) in seed_corpus(12, 3) {
            assert!(seed.is_initial(), "{label}");
            assert!(seed.sigma().is_some(), "{label}");
        }
    }
}
