//! ElGamal encryption over a primitive root of a prime, applied sample by sample to
//! grayscale and RGB images.
//!
//! The number theory, keys and cipher are generic over [`modmath::Natural`] (`u32`, `u64`
//! or [`BigUint`]); the statistics in [`analysis`] are generic over `num_traits::Float`.
//! The aliases below fix the types used by the command-line tool: arbitrary-precision
//! residues and `f64` statistics.
//!
//! **Toy code.** Unauthenticated, unpadded and, at the default key size, trivially
//! breakable. Do not use it to protect anything.

pub mod analysis;
pub mod cipher;
pub mod cli;
pub mod error;
pub mod imagecodec;
pub mod keys;
pub mod modmath;

pub use num_bigint::BigUint;
pub use rand_chacha::ChaCha20Rng;

pub use cipher::Mode;
pub use error::{Error, Result};
pub use imagecodec::{Channels, ImageMatrix};

pub type PublicKey = keys::PublicKey<BigUint>;
pub type PrivateKey = keys::PrivateKey<BigUint>;
pub type KeyPair = keys::KeyPair<BigUint>;
pub type FactorSet = modmath::FactorSet<BigUint>;
pub type ElementCipher = cipher::ElementCipher<BigUint>;
pub type CipherImage = cipher::CipherImage<BigUint>;
pub type AnalysisReport = analysis::AnalysisReport<f64>;

/// Word-sized variants for moduli below 2^64.
pub type PublicKey64 = keys::PublicKey<u64>;
pub type PrivateKey64 = keys::PrivateKey<u64>;
pub type KeyPair64 = keys::KeyPair<u64>;
pub type CipherImage64 = cipher::CipherImage<u64>;

pub type AnalysisReport32 = analysis::AnalysisReport<f32>;

/// Source of every random draw: safe-prime candidates, secret exponents and ephemeral
/// exponents.
pub type RandomSource = ChaCha20Rng;

/// Deterministic generator for reproducible runs. Not for real keys.
pub fn seeded_rng(seed: u64) -> RandomSource {
    use rand::SeedableRng;
    ChaCha20Rng::seed_from_u64(seed)
}

/// Generator seeded from operating-system entropy.
pub fn entropy_rng() -> RandomSource {
    use rand::SeedableRng;
    ChaCha20Rng::from_entropy()
}
