//! Modular arithmetic and the number theory behind key generation: square-and-multiply
//! exponentiation, extended-Euclid inverses, Miller–Rabin, factorization of `p - 1`,
//! Euler's phi and primitive roots.
//!
//! Every routine is generic over [`Natural`], an unsigned integer that knows how to
//! multiply modulo another value without overflowing. `u32` and `u64` are fast paths for
//! toy moduli and exhaustive oracles; [`BigUint`] carries cryptographic sizes.

mod arith;
mod factor;
mod prime;
mod root;

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, ToPrimitive};
use rand::Rng;

pub use arith::{mod_exp, mod_inv};
pub use factor::{euler_phi, factorize, FactorSet, DEFAULT_FACTOR_EFFORT};
pub use prime::{gen_safe_prime, is_probable_prime, small_primes, DEFAULT_MR_ROUNDS};
pub use root::{factor_group_order, find_primitive_root, is_primitive_root, sample_primitive_root};

/// Unsigned integer usable as a residue and modulus.
pub trait Natural:
    Clone + Ord + Hash + Debug + Display + Send + Sync + Integer + FromPrimitive + ToPrimitive + 'static
{
    /// Widest value the type can hold, in bits. `None` means unbounded.
    const MAX_BITS: Option<u64>;

    /// `(self * rhs) mod modulus` without intermediate overflow.
    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self;

    /// Number of significant bits; zero has length 0.
    fn bit_len(&self) -> u64;

    fn test_bit(&self, index: u64) -> bool;

    /// Minimal big-endian bytes. Zero encodes as a single `0x00`.
    fn to_be_bytes_min(&self) -> Vec<u8>;

    /// `None` when the value does not fit.
    fn from_be_slice(bytes: &[u8]) -> Option<Self>;

    fn from_decimal(text: &str) -> Option<Self>;
}

macro_rules! impl_natural_prim {
    ($t:ty, $wide:ty) => {
        impl Natural for $t {
            const MAX_BITS: Option<u64> = Some(<$t>::BITS as u64);

            fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self {
                ((*self as $wide * *rhs as $wide) % *modulus as $wide) as $t
            }

            fn bit_len(&self) -> u64 {
                (<$t>::BITS - self.leading_zeros()) as u64
            }

            fn test_bit(&self, index: u64) -> bool {
                index < <$t>::BITS as u64 && (self >> index) & 1 == 1
            }

            fn to_be_bytes_min(&self) -> Vec<u8> {
                let bytes = self.to_be_bytes();
                let skip = bytes.iter().take_while(|b| **b == 0).count();
                if skip == bytes.len() {
                    vec![0]
                } else {
                    bytes[skip..].to_vec()
                }
            }

            fn from_be_slice(bytes: &[u8]) -> Option<Self> {
                let skip = bytes.iter().take_while(|b| **b == 0).count();
                let significant = &bytes[skip..];
                if significant.len() > std::mem::size_of::<$t>() {
                    return None;
                }
                Some(significant.iter().fold(0, |acc, b| (acc << 8) | *b as $t))
            }

            fn from_decimal(text: &str) -> Option<Self> {
                <$t as Num>::from_str_radix(text, 10).ok()
            }
        }
    };
}

impl_natural_prim!(u32, u64);
impl_natural_prim!(u64, u128);

impl Natural for BigUint {
    const MAX_BITS: Option<u64> = None;

    fn mul_mod(&self, rhs: &Self, modulus: &Self) -> Self {
        (self * rhs) % modulus
    }

    fn bit_len(&self) -> u64 {
        self.bits()
    }

    fn test_bit(&self, index: u64) -> bool {
        self.bit(index)
    }

    fn to_be_bytes_min(&self) -> Vec<u8> {
        self.to_bytes_be()
    }

    fn from_be_slice(bytes: &[u8]) -> Option<Self> {
        Some(BigUint::from_bytes_be(bytes))
    }

    fn from_decimal(text: &str) -> Option<Self> {
        BigUint::from_str_radix(text, 10).ok()
    }
}

/// Small constant into any [`Natural`]. Panics only if `T` cannot hold `value`.
pub fn nat<T: Natural>(value: u64) -> T {
    T::from_u64(value).expect("constant does not fit the scalar type")
}

/// Uniform draw from `[0, bound)` by masked rejection sampling.
pub fn uniform_below<T: Natural, R: Rng + ?Sized>(bound: &T, rng: &mut R) -> T {
    assert!(!bound.is_zero(), "empty sampling range");
    let bits = (bound.clone() - T::one()).bit_len();
    if bits == 0 {
        return T::zero();
    }
    let len = bits.div_ceil(8) as usize;
    let top_mask = 0xffu8 >> (len as u64 * 8 - bits);
    let mut buf = vec![0u8; len];
    loop {
        rng.fill_bytes(&mut buf);
        buf[0] &= top_mask;
        if let Some(candidate) = T::from_be_slice(&buf) {
            if &candidate < bound {
                return candidate;
            }
        }
    }
}

/// Uniform draw from the inclusive range `[low, high]`.
pub fn uniform_inclusive<T: Natural, R: Rng + ?Sized>(low: &T, high: &T, rng: &mut R) -> T {
    assert!(low <= high, "empty sampling range");
    let span = high.clone() - low.clone() + T::one();
    low.clone() + uniform_below(&span, rng)
}
