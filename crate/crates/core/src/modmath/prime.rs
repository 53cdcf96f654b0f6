use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use super::{mod_exp, nat, uniform_inclusive, Natural};
use crate::error::{Error, Result};

pub const DEFAULT_MR_ROUNDS: u32 = 40;

/// Fixed Miller–Rabin bases. Together they decide primality exactly below 3.3·10^24.
const FIXED_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

const TRIAL_LIMIT: u64 = 1 << 16;

/// All primes below 2^16, ascending.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::new();
        for i in 2..n {
            if !composite[i] {
                primes.push(i as u32);
                let mut j = i * i;
                while j < n {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// Miller–Rabin with `rounds` witnesses after trial division by the primes below 256.
///
/// Inputs below 2^16 are settled by trial division alone. The first twelve witnesses are
/// the fixed prime bases; any further ones are drawn from a generator seeded by `n`, so
/// the answer is a pure function of the arguments. `false` always means composite.
pub fn is_probable_prime<T: Natural>(n: &T, rounds: u32) -> bool {
    if n < &nat(2) {
        return false;
    }
    for &q in small_primes().iter().take_while(|q| **q < 256) {
        let q: T = nat(q as u64);
        if n == &q {
            return true;
        }
        if (n.clone() % q).is_zero() {
            return false;
        }
    }
    if n < &nat(TRIAL_LIMIT) {
        return true;
    }

    let one = T::one();
    let n_minus_one = n.clone() - one.clone();
    let mut d = n_minus_one.clone();
    let mut twos = 0u64;
    while d.is_even() {
        d = d / nat(2);
        twos += 1;
    }

    let is_witness = |a: &T| -> bool {
        let mut x = mod_exp(a, &d, n).expect("n >= 2");
        if x == one || x == n_minus_one {
            return false;
        }
        for _ in 1..twos {
            x = x.mul_mod(&x, n);
            if x == n_minus_one {
                return false;
            }
        }
        true
    };

    let rounds = rounds.max(1) as usize;
    if FIXED_BASES
        .iter()
        .take(rounds)
        .any(|&a| is_witness(&nat(a)))
    {
        return false;
    }
    if rounds > FIXED_BASES.len() {
        let mut rng = witness_rng(n);
        let high = n.clone() - nat(2);
        for _ in FIXED_BASES.len()..rounds {
            let a = uniform_inclusive(&nat(2), &high, &mut rng);
            if is_witness(&a) {
                return false;
            }
        }
    }
    true
}

fn witness_rng<T: Natural>(n: &T) -> ChaCha20Rng {
    let mut seed = [0x5au8; 32];
    for (i, b) in n.to_be_bytes_min().iter().enumerate() {
        seed[i % 32] ^= b.rotate_left((i / 32) as u32);
    }
    ChaCha20Rng::from_seed(seed)
}

/// Random safe prime `p = 2q + 1` with exactly `bits` bits; `q` and `p` both pass
/// [`DEFAULT_MR_ROUNDS`] rounds of Miller–Rabin.
pub fn gen_safe_prime<T: Natural, R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<T> {
    if bits < 3 {
        return Err(Error::InvalidArgument(format!(
            "no safe prime has {bits} bits"
        )));
    }
    if let Some(max) = T::MAX_BITS {
        if bits > max {
            return Err(Error::InvalidArgument(format!(
                "{bits}-bit prime does not fit a {max}-bit scalar"
            )));
        }
    }
    let q_low: T = num_traits::pow(nat(2), (bits - 2) as usize);
    let q_high: T = q_low.clone() * nat(2) - T::one();
    let sieve: Vec<T> = small_primes()
        .iter()
        .take(512)
        .map(|&l| nat(l as u64))
        .collect();
    let two: T = nat(2);

    loop {
        let mut q = uniform_inclusive(&q_low, &q_high, rng);
        if bits > 3 && q.is_even() {
            q = q + T::one();
            if q > q_high {
                continue;
            }
        }
        let p = q.clone() * two.clone() + T::one();
        let sieved = sieve.iter().any(|l| {
            (&q != l && (q.clone() % l.clone()).is_zero())
                || (&p != l && (p.clone() % l.clone()).is_zero())
        });
        if sieved {
            continue;
        }
        if is_probable_prime(&q, 1)
            && is_probable_prime(&p, 1)
            && is_probable_prime(&q, DEFAULT_MR_ROUNDS)
            && is_probable_prime(&p, DEFAULT_MR_ROUNDS)
        {
            return Ok(p);
        }
    }
}
