//! Seeded inputs shared by the pipeline benchmarks.

use mudt::synth::{random_treebank, random_ud_sentence};
use mudt::{serialize_treebank, Treebank};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 0x6d75_6474;

/// `n` random sentences of up to `max_len` tokens, as parsed data.
pub fn treebank(n: usize, max_len: usize) -> Treebank {
    random_treebank(&mut ChaCha8Rng::seed_from_u64(SEED), n, max_len)
}

/// The same treebank rendered as extended CoNLL-U.
pub fn conllu_text(n: usize, max_len: usize) -> String {
    serialize_treebank(&treebank(n, max_len))
}

/// UD-style projective sentences that trigger the conversion rules.
pub fn ud_treebank(n: usize, max_len: usize) -> Treebank {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (0..n).map(|i| random_ud_sentence(&mut rng, i + 1, max_len)).collect()
}
