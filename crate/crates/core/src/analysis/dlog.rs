use std::collections::HashMap;
use std::time::{Duration, Instant};

use num_integer::Roots;

use crate::error::{Error, Result};
use crate::keys::{PrivateKey, PublicKey};
use crate::modmath::{mod_exp, mod_inv, nat, Natural};

/// Baby-step giant-step refuses moduli at or above `2^BSGS_MAX_BITS`.
pub const BSGS_MAX_BITS: u32 = 26;

/// Discrete logarithm `a` in `[0, p-2]` with `r^a ≡ s (mod p)`, for a primitive root `r`
/// of a prime `p < 2^26`. Baby-step giant-step: `O(√p)` time and table size.
pub fn bsgs_dlog<T: Natural>(r: &T, s: &T, p: &T) -> Result<T> {
    let modulus = p
        .to_u64()
        .filter(|v| *v < 1 << BSGS_MAX_BITS)
        .ok_or_else(|| Error::RefuseLargeModulus(p.to_string()))?;
    if modulus < 3 {
        return Err(Error::InvalidArgument(format!("p = {p} is too small")));
    }
    let base = r.to_u64().map(|v| v % modulus).unwrap_or(0);
    let target = s
        .to_u64()
        .filter(|v| (1..modulus).contains(v))
        .ok_or_else(|| Error::InvalidArgument(format!("s = {s} is outside [1, p-1]")))?;
    if base == 0 {
        return Err(Error::InvalidArgument(format!("r = {r} is 0 modulo p")));
    }

    let order = modulus - 1;
    let m = order.sqrt() + 1;

    let mut baby = HashMap::with_capacity(m as usize);
    let mut acc = 1u64;
    for j in 0..m {
        baby.entry(acc).or_insert(j);
        acc = acc.mul_mod(&base, &modulus);
    }

    let giant = mod_inv(&mod_exp(&base, &m, &modulus)?, &modulus)?;
    let mut gamma = target;
    for i in 0..m {
        if let Some(&j) = baby.get(&gamma) {
            return Ok(nat((i * m + j) % order));
        }
        gamma = gamma.mul_mod(&giant, &modulus);
    }
    Err(Error::Internal(format!(
        "no discrete logarithm of {s} to base {r} modulo {p}; r is not a primitive root"
    )))
}

/// Private key recovered from a public key by solving for the secret exponent.
#[derive(Debug, Clone)]
pub struct KeyRecovery<T> {
    pub private: PrivateKey<T>,
    pub elapsed: Duration,
}

pub fn recover_private_key<T: Natural>(key: &PublicKey<T>) -> Result<KeyRecovery<T>> {
    let start = Instant::now();
    let a = bsgs_dlog(&key.r, &key.s, &key.p)?;
    let elapsed = start.elapsed();
    Ok(KeyRecovery {
        private: PrivateKey {
            p: key.p.clone(),
            r: key.r.clone(),
            a,
        },
        elapsed,
    })
}
