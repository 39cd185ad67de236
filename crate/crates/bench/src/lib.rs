//! Input generators shared by the benchmarks.

use equitable::{Alphabet, Gen, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random word of length `len` over `alphabet`.
pub fn random_word(rng: &mut impl Rng, alphabet: Alphabet, len: usize) -> Word {
    let letters = alphabet.letters();
    let picks: Vec<Gen> = (0..len).map(|_| letters[rng.gen_range(0..letters.len())]).collect();
    Word::new(alphabet, picks).expect("letters come from the alphabet")
}
