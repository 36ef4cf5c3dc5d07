//! Seeded, splittable randomness.
//!
//! Every random draw in the crate comes from a ChaCha stream identified by
//! `(seed, purpose, index)`. A draw therefore does not depend on how many
//! draws were made before it, so work split across threads reproduces the
//! sequential result exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rat, Vector};

/// Purpose tags, kept in the high bits of the ChaCha stream id.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
#[repr(u64)]
pub enum Purpose {
    Current = 1,
    SpanningPair = 2,
    StarSeed = 3,
    Campaign = 4,
    Selftest = 5,
}

pub fn substream(seed: u64, purpose: Purpose, index: u64) -> ChaCha8Rng {
    debug_assert!(index < 1 << 48);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((purpose as u64) << 48) | index);
    rng
}

/// `len` integers drawn uniformly from `[-height, height]`.
pub fn int_coords(rng: &mut impl Rng, len: usize, height: u32) -> Vector {
    let h = i64::from(height);
    (0..len).map(|_| rat(rng.gen_range(-h..=h))).collect()
}
