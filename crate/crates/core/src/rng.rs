//! Seeded randomness.
//!
//! Every randomized operation takes an explicit generator. The generator is
//! ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded through `seed_from_u64`, so a
//! 64-bit seed reproduces key files and ciphertexts byte for byte.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type MorRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> MorRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `[lo, hi]`.
pub fn uniform_inclusive<R: Rng + ?Sized>(rng: &mut R, lo: u64, hi: u64) -> u64 {
    rng.gen_range(lo..=hi)
}

/// Uniform integer with exactly `bits` bits (top bit set).
pub fn random_exponent<R: Rng + ?Sized>(rng: &mut R, bits: u64) -> BigUint {
    if bits == 0 {
        return BigUint::default();
    }
    let words = bits.div_ceil(32) as usize;
    let mut digits: Vec<u32> = (0..words).map(|_| rng.gen()).collect();
    let top_bits = bits - 32 * (words as u64 - 1);
    let last = &mut digits[words - 1];
    if top_bits < 32 {
        *last &= (1u32 << top_bits) - 1;
    }
    *last |= 1u32 << (top_bits - 1);
    BigUint::new(digits)
}
