//! Seeded, splittable random number streams.
//!
//! Every randomized operation derives its generators through [`stream`]:
//! ChaCha8 keyed by the user seed, with the 64-bit stream counter selecting an
//! independent substream per unit of work (resample index, simulation
//! component, ...). Streams never share state, so work items can be evaluated
//! in any order, or in parallel, without perturbing the output.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent generator for substream `index` of `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
