use std::collections::BTreeMap;

use super::{is_probable_prime, nat, small_primes, Natural, DEFAULT_MR_ROUNDS};
use crate::error::{Error, Result};

/// Pollard rho iteration budget used when callers do not supply one.
pub const DEFAULT_FACTOR_EFFORT: u64 = 1 << 22;

/// Prime factorization as ascending `(prime, exponent)` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet<T> {
    factors: Vec<(T, u32)>,
}

impl<T: Natural> FactorSet<T> {
    /// Builds a set from explicit pairs, merging repeats. Checks that every listed prime
    /// passes the primality test and every exponent is positive.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (T, u32)>) -> Result<Self> {
        let mut merged = BTreeMap::new();
        for (prime, exponent) in pairs {
            if exponent == 0 {
                return Err(Error::InvalidArgument(format!(
                    "factor {prime} has exponent 0"
                )));
            }
            if !is_probable_prime(&prime, DEFAULT_MR_ROUNDS) {
                return Err(Error::InvalidArgument(format!(
                    "factor {prime} is not prime"
                )));
            }
            *merged.entry(prime).or_insert(0) += exponent;
        }
        Ok(FactorSet {
            factors: merged.into_iter().collect(),
        })
    }

    pub fn pairs(&self) -> &[(T, u32)] {
        &self.factors
    }

    /// Distinct primes, ascending.
    pub fn primes(&self) -> impl Iterator<Item = &T> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn product(&self) -> T {
        self.factors.iter().fold(T::one(), |acc, (p, e)| {
            acc * num_traits::pow(p.clone(), *e as usize)
        })
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Complete factorization of `n >= 2`: trial division by the primes below 2^16, then
/// Brent's variant of Pollard rho on whatever remains. `effort_bound` caps the total
/// number of rho iterations.
pub fn factorize<T: Natural>(n: &T, effort_bound: u64) -> Result<FactorSet<T>> {
    if n < &nat(2) {
        return Err(Error::InvalidArgument(format!("cannot factor {n}")));
    }
    let mut found: BTreeMap<T, u32> = BTreeMap::new();
    let mut rest = n.clone();

    for &q in small_primes() {
        let q: T = nat(q as u64);
        if q.clone() * q.clone() > rest {
            break;
        }
        while (rest.clone() % q.clone()).is_zero() {
            rest = rest / q.clone();
            *found.entry(q.clone()).or_insert(0) += 1;
        }
    }

    let mut budget = effort_bound;
    let mut pending = Vec::new();
    if !rest.is_one() {
        pending.push(rest);
    }
    while let Some(m) = pending.pop() {
        if is_probable_prime(&m, DEFAULT_MR_ROUNDS) {
            *found.entry(m).or_insert(0) += 1;
            continue;
        }
        match pollard_brent(&m, &mut budget) {
            Some(d) => {
                pending.push(m.clone() / d.clone());
                pending.push(d);
            }
            None => return Err(Error::FactorizationIncomplete(m.to_string())),
        }
    }

    Ok(FactorSet {
        factors: found.into_iter().collect(),
    })
}

/// Nontrivial divisor of the odd composite `n`, or `None` once `budget` runs out.
fn pollard_brent<T: Natural>(n: &T, budget: &mut u64) -> Option<T> {
    const BATCH: u64 = 128;
    let one = T::one();
    let step = |x: &T, c: &T| (x.mul_mod(x, n) + c.clone()) % n.clone();
    let abs_diff = |a: &T, b: &T| {
        if a > b {
            a.clone() - b.clone()
        } else {
            b.clone() - a.clone()
        }
    };

    let mut c = one.clone();
    loop {
        let mut y: T = nat(2);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        let mut q = one.clone();
        let mut r = 1u64;

        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = step(&y, &c);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                let rounds = BATCH.min(r - k);
                if *budget < rounds {
                    return None;
                }
                *budget -= rounds;
                for _ in 0..rounds {
                    y = step(&y, &c);
                    q = q.mul_mod(&abs_diff(&x, &y), n);
                }
                g = q.gcd(n);
                k += rounds;
            }
            r *= 2;
        }

        if &g == n {
            // Batched product hit zero; replay one step at a time.
            loop {
                if *budget == 0 {
                    return None;
                }
                *budget -= 1;
                ys = step(&ys, &c);
                g = abs_diff(&x, &ys).gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
        c = c + one.clone();
    }
}

/// Euler's totient, `n · Π (1 - 1/q)` over the distinct primes dividing `n`.
pub fn euler_phi<T: Natural>(n: &T) -> Result<T> {
    if n.is_zero() {
        return Err(Error::InvalidArgument("phi(0) is undefined".into()));
    }
    if n.is_one() {
        return Ok(T::one());
    }
    let factors = factorize(n, DEFAULT_FACTOR_EFFORT)?;
    Ok(factors
        .primes()
        .fold(n.clone(), |acc, q| acc / q.clone() * (q.clone() - T::one())))
}
