use super::Natural;
use crate::error::{Error, Result};

/// `base^exponent mod modulus` by left-to-right square-and-multiply.
pub fn mod_exp<T: Natural>(base: &T, exponent: &T, modulus: &T) -> Result<T> {
    if modulus < &super::nat(2) {
        return Err(Error::InvalidModulus);
    }
    let base = base.clone() % modulus.clone();
    let mut acc = T::one();
    for i in (0..exponent.bit_len()).rev() {
        acc = acc.mul_mod(&acc, modulus);
        if exponent.test_bit(i) {
            acc = acc.mul_mod(&base, modulus);
        }
    }
    Ok(acc)
}

/// Inverse of `x` modulo `modulus` via the extended Euclidean algorithm.
///
/// The Bézout coefficient of `x` is tracked reduced modulo `modulus`, which keeps every
/// intermediate unsigned: each remainder `r_i` satisfies `r_i ≡ t_i · x`.
pub fn mod_inv<T: Natural>(x: &T, modulus: &T) -> Result<T> {
    if modulus < &super::nat(2) {
        return Err(Error::InvalidModulus);
    }
    let not_invertible = || Error::NotInvertible(x.to_string(), modulus.to_string());
    let reduced = x.clone() % modulus.clone();
    if reduced.is_zero() {
        return Err(not_invertible());
    }

    let (mut r0, mut r1) = (modulus.clone(), reduced);
    let (mut t0, mut t1) = (T::zero(), T::one());
    while !r1.is_zero() {
        let (q, r2) = r0.div_rem(&r1);
        let qt = q.mul_mod(&t1, modulus);
        let t2 = if t0 >= qt {
            t0 - qt
        } else {
            modulus.clone() - (qt - t0)
        };
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if !r0.is_one() {
        return Err(not_invertible());
    }
    Ok(t0)
}
