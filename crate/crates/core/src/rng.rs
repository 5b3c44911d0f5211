//! Seeded generators. Every stochastic routine takes a master seed; replica
//! `i` draws from stream `i` of the same ChaCha20 key, so streams never
//! overlap and results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub type Rng = ChaCha20Rng;

pub fn master(seed: u64) -> Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Independent stream `index` under `seed`. Stream 0 is reserved for
/// [`master`].
pub fn child(seed: u64, index: u64) -> Rng {
    let mut r = ChaCha20Rng::seed_from_u64(seed);
    r.set_stream(index.wrapping_add(1));
    r
}
