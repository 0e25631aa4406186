//! Seeding contract.
//!
//! Every random draw in the crate comes from [`ChaCha8Rng`], seeded through
//! `seed_from_u64`. Work that is split into trials or chunks derives one
//! independent seed per index with [`derive_seed`], so results never depend
//! on how the work is scheduled.

use rand::SeedableRng;
pub use rand_chacha::ChaCha8Rng as Rng;

/// SplitMix64 finalizer applied to `master + (index + 1) * golden`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

pub fn trial_rng(master: u64, index: u64) -> Rng {
    seeded(derive_seed(master, index))
}
