//! Seeded, counter-based randomness.
//!
//! Every randomized operation takes an explicit `u64` seed and draws from a
//! ChaCha20 stream. Independent sub-streams (retries, trials) are selected by
//! the ChaCha stream id, so they do not depend on how many values earlier
//! streams consumed.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type Rng = ChaCha20Rng;

pub fn seeded(seed: u64) -> Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Sub-stream `index` of `seed`.
pub fn substream(seed: u64, index: u64) -> Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Bit `index` of the keystream of `seed` (stream 0), computed by seeking to
/// the containing word. Usable as an order-independent fair coin per index.
pub fn coin(seed: u64, index: u64) -> bool {
    use rand::RngCore;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_word_pos((index / 32) as u128);
    (rng.next_u32() >> (index % 32)) & 1 == 1
}

/// Coins for indices `0..count`, identical to calling [`coin`] on each index.
pub fn coins(seed: u64, count: u64) -> Vec<bool> {
    use rand::RngCore;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count as usize);
    while (out.len() as u64) < count {
        let w = rng.next_u32();
        for b in 0..32 {
            if out.len() as u64 == count {
                break;
            }
            out.push((w >> b) & 1 == 1);
        }
    }
    out
}
