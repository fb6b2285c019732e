//! Seed streams.
//!
//! All randomness is drawn from [`ChaCha8Rng`], whose output stream is fixed
//! by its published algorithm and therefore identical on every platform.
//! Child seeds are derived from a master seed by folding a path of labels
//! through the SplitMix64 finalizer, e.g. `derive_seed(master, &[NETWORK, 3])`
//! for the fourth network of a suite. Distinct paths give statistically
//! independent generators; the same path always gives the same seed.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as SimRng;

/// Stream label for network generation.
pub const STREAM_NETWORK: u64 = 0x6e65_7477_6f72_6b00;
/// Stream label for sweep realizations.
pub const STREAM_REALIZATION: u64 = 0x7265_616c_697a_6500;
/// Stream label for Erdős–Rényi networks in the replication suite.
pub const STREAM_ER: u64 = 0x6572_0000_0000_0000;
/// Stream label for Barabási–Albert networks in the replication suite.
pub const STREAM_BA: u64 = 0x6261_0000_0000_0000;

#[inline]
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a child seed from `master` and a label path.
pub fn derive_seed(master: u64, path: &[u64]) -> u64 {
    path.iter()
        .fold(splitmix64(master), |acc, &label| splitmix64(acc ^ splitmix64(label)))
}

/// Generator seeded directly from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}
