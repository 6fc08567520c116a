//! Deterministic seed derivation.
//!
//! Every randomized component takes a `u64` seed and derives substreams with
//! [`derive_seed`] so that results are reproducible across runs, platforms
//! and thread schedules. Hashing is a fixed splitmix64 chain, independent of
//! `std`'s randomized hashers.

use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive an independent child seed from a base seed and a stream index.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    mix(mix(base) ^ stream.wrapping_mul(0xa076_1d64_78bd_642f))
}

/// Seed bound to a particular solution, so re-evaluating the same solution
/// under the same base seed reproduces the same draws.
pub fn solution_seed(base: u64, picks: &[usize]) -> u64 {
    let mut acc = mix(base ^ 0x5851_f42d_4c95_7f2d);
    for &p in picks {
        acc = mix(acc ^ (p as u64).wrapping_add(0x14057_b7ef_767_814f));
    }
    acc
}

pub fn chacha(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
