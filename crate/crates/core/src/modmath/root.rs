use rand::Rng;

use super::{factorize, mod_exp, nat, uniform_inclusive, FactorSet, Natural};
use crate::error::{Error, Result};

/// Factorization of `p - 1`, the order of the multiplicative group modulo a prime `p`.
pub fn factor_group_order<T: Natural>(p: &T, effort_bound: u64) -> Result<FactorSet<T>> {
    if p < &nat(3) {
        return Err(Error::InvalidArgument(format!(
            "group order of p = {p} has no prime factors"
        )));
    }
    factorize(&(p.clone() - T::one()), effort_bound)
}

/// Whether `r` generates the multiplicative group modulo the prime `p`: for every prime
/// `q` dividing `p - 1`, `r^((p-1)/q) != 1`.
pub fn is_primitive_root<T: Natural>(r: &T, p: &T, phi_factors: &FactorSet<T>) -> Result<bool> {
    if p < &nat(2) {
        return Err(Error::InvalidModulus);
    }
    if (r.clone() % p.clone()).is_zero() {
        return Err(Error::InvalidArgument(format!(
            "{r} is congruent to 0 modulo {p}"
        )));
    }
    let order = p.clone() - T::one();
    if phi_factors.product() != order {
        return Err(Error::InvalidArgument(format!(
            "factor set does not multiply to p - 1 = {order}"
        )));
    }
    for q in phi_factors.primes() {
        let cofactor = order.clone() / q.clone();
        if mod_exp(r, &cofactor, p)?.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest primitive root `r >= 2` of the prime `p >= 3`.
pub fn find_primitive_root<T: Natural>(p: &T, phi_factors: &FactorSet<T>) -> Result<T> {
    check_candidate_range(p)?;
    let mut r: T = nat(2);
    while &r < p {
        if is_primitive_root(&r, p, phi_factors)? {
            return Ok(r);
        }
        r = r + T::one();
    }
    Err(Error::InvalidArgument(format!(
        "{p} has no primitive root; is it prime?"
    )))
}

/// Uniformly random primitive root of the prime `p >= 3`, drawn by rejection from `[2, p-1]`.
///
/// For `p = 3` the only candidate is 2. A composite `p` may never terminate, so callers
/// must pass a prime.
pub fn sample_primitive_root<T: Natural, R: Rng + ?Sized>(
    p: &T,
    phi_factors: &FactorSet<T>,
    rng: &mut R,
) -> Result<T> {
    check_candidate_range(p)?;
    let high = p.clone() - T::one();
    loop {
        let r = uniform_inclusive(&nat(2), &high, rng);
        if is_primitive_root(&r, p, phi_factors)? {
            return Ok(r);
        }
    }
}

fn check_candidate_range<T: Natural>(p: &T) -> Result<()> {
    if p < &nat(3) {
        return Err(Error::InvalidArgument(format!(
            "primitive-root search needs a prime p >= 3, got {p}"
        )));
    }
    Ok(())
}
