//! Per-iteration random streams and the run-scoring distribution.
//!
//! Seed derivation is bit-exact and platform independent:
//!
//! ```text
//! mix(z):  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!          z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//!          z =  z ^ (z >> 31)                       (wrapping u64 arithmetic)
//!
//! derive_stream_seed(master, j) = mix(mix(master) + (j + 1) * 0x9E3779B97F4A7C15)
//! ```
//!
//! `mix` is the SplitMix64 finalizer, a bijection on `u64`, and multiplication
//! by the odd golden-ratio constant is a bijection too, so distinct iterations
//! always get distinct stream seeds. A stream is a ChaCha8 generator whose
//! 32-byte key is four consecutive SplitMix64 outputs starting from the stream
//! seed, each written little-endian.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Poisson};

/// Random stream owned by one simulated season.
pub type Stream = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_stream_seed(master_seed: u64, iteration: u64) -> u64 {
    mix64(mix64(master_seed).wrapping_add(iteration.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA)))
}

pub fn stream_from_seed(seed: u64) -> Stream {
    let mut key = [0u8; 32];
    let mut state = seed;
    for chunk in key.chunks_exact_mut(8) {
        state = state.wrapping_add(GOLDEN_GAMMA);
        chunk.copy_from_slice(&mix64(state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Stream for iteration `iteration` of an experiment seeded with `master_seed`.
pub fn iteration_stream(master_seed: u64, iteration: u64) -> Stream {
    stream_from_seed(derive_stream_seed(master_seed, iteration))
}

/// One negative-binomial draw with mean `mu` and variance `mu + mu²/r`, taken
/// as a Poisson draw whose rate is Gamma(shape `r`, scale `mu/r`).
pub fn sample_runs<R: Rng + ?Sized>(mu: f64, r: f64, stream: &mut R) -> u32 {
    let rate = Gamma::new(r, mu / r)
        .expect("shape and scale are positive")
        .sample(stream);
    poisson(rate, stream)
}

/// Poisson draw that treats a vanishing rate as zero runs.
pub(crate) fn poisson<R: Rng + ?Sized>(rate: f64, stream: &mut R) -> u32 {
    if !(rate > 0.0) {
        return 0;
    }
    let k: f64 = Poisson::new(rate).expect("rate is positive and finite").sample(stream);
    k as u32
}
