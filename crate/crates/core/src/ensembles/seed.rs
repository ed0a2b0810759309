//! Seed derivation and random sub-streams.
//!
//! Every random quantity is drawn from a ChaCha8 stream keyed by a 64-bit
//! seed and selected by a stream id. ChaCha is counter based, so the streams
//! are independent and each one is reproducible on its own:
//!
//! | stream | contents                 |
//! |--------|--------------------------|
//! | 0      | coefficient matrix `A`   |
//! | 1      | support locations        |
//! | 2      | non-zero values of `x`   |
//! | 3      | observation noise `e`    |
//!
//! Per-trial seeds come from [`derive_seed`], which folds a master seed with
//! a list of integers (grid coordinates, trial index) through SplitMix64.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const STREAM_MATRIX: u64 = 0;
pub const STREAM_SUPPORT: u64 = 1;
pub const STREAM_NONZEROS: u64 = 2;
pub const STREAM_NOISE: u64 = 3;

/// ChaCha8 generator for `(seed, stream)`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `h₀ = splitmix64(master)`, `hᵢ = splitmix64(hᵢ₋₁ ⊕ splitmix64(partᵢ))`.
pub fn derive_seed(master: u64, parts: &[u64]) -> u64 {
    parts
        .iter()
        .fold(splitmix64(master), |h, &p| splitmix64(h ^ splitmix64(p)))
}
