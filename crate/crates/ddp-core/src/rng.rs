//! Seeded randomness used by every generator in the crate.
//!
//! All generators draw from ChaCha12 keyed by a `u64` seed. Substreams are
//! split off with [`split`]; the (seed, stream) pair pins every sample, so a
//! port in any language that speaks ChaCha12 reproduces the corpora.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub type Rng = ChaCha12Rng;

/// Root generator for a seed, stream 0.
pub fn seeded(seed: u64) -> Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// Independent substream `stream` of the same seed.
pub fn split(seed: u64, stream: u64) -> Rng {
    let mut r = ChaCha12Rng::seed_from_u64(seed);
    r.set_stream(stream.into());
    r
}
