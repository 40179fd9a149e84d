//! Reproducible randomness.
//!
//! Every random object in the crate comes from ChaCha8 (the `rand_chacha`
//! implementation) keyed by a 64-bit seed through `seed_from_u64`. Sub-streams
//! such as "repetition 3 of seed 42" get their own seed by hashing the parent
//! seed and a label with SplitMix64, so they do not overlap.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One SplitMix64 step; a bijection with good avalanche.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of sub-stream `index` under `label`, derived from `seed`.
pub fn derive_seed(seed: u64, label: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(label)).wrapping_add(index))
}
