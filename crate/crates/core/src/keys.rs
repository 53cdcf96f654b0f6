//! ElGamal key generation, validation and the text key-file format.
//!
//! A public key is the announced triple `(r, s, p)` with `s = r^a mod p`; the private key
//! keeps the secret exponent `a` together with `p` and `r`, so decryption needs only the
//! private key file and the cipher container.
//!
//! Key files are UTF-8 with LF line endings:
//!
//! ```text
//! ELGAMAL PUBLIC v1        ELGAMAL PRIVATE v1
//! p=<decimal>              p=<decimal>
//! r=<decimal>              r=<decimal>
//! s=<decimal>              a=<decimal>
//! ```

use std::fmt;
use std::fs;
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::modmath::{
    factor_group_order, find_primitive_root, gen_safe_prime, is_primitive_root, is_probable_prime,
    mod_exp, nat, uniform_inclusive, FactorSet, Natural, DEFAULT_FACTOR_EFFORT, DEFAULT_MR_ROUNDS,
};

/// Smallest accepted key size for generation.
pub const MIN_KEY_BITS: u64 = 10;
/// Key sizes below this are flagged as insecure.
pub const SECURE_KEY_BITS: u64 = 128;

pub const PUBLIC_HEADER: &str = "ELGAMAL PUBLIC v1";
pub const PRIVATE_HEADER: &str = "ELGAMAL PRIVATE v1";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublicKey<T> {
    pub p: T,
    pub r: T,
    pub s: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivateKey<T> {
    pub p: T,
    pub r: T,
    pub a: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyPair<T> {
    pub public: PublicKey<T>,
    pub private: PrivateKey<T>,
}

/// Warning text for a modulus of `bits` bits, if it is below [`SECURE_KEY_BITS`].
pub fn key_size_warning(bits: u64) -> Option<String> {
    (bits < SECURE_KEY_BITS).then(|| {
        format!(
            "warning: {bits}-bit modulus is far too small for real secrecy; \
             discrete logarithms at this size are cheap"
        )
    })
}

/// Checks that `p` is prime and `r` generates its multiplicative group.
fn check_group<T: Natural>(p: &T, r: &T) -> Result<()> {
    if p < &nat(3) || !is_probable_prime(p, DEFAULT_MR_ROUNDS) {
        return Err(Error::InvalidKey(format!("p = {p} is not an odd prime")));
    }
    if r < &nat(2) || r >= p {
        return Err(Error::InvalidKey(format!("r = {r} is outside [2, p-1]")));
    }
    let factors = factor_group_order(p, DEFAULT_FACTOR_EFFORT)
        .map_err(|e| Error::InvalidKey(format!("cannot verify r for p = {p}: {e}")))?;
    if !is_primitive_root(r, p, &factors)? {
        return Err(Error::InvalidKey(format!(
            "r = {r} is not a primitive root of p = {p}"
        )));
    }
    Ok(())
}

fn check_exponent<T: Natural>(p: &T, a: &T) -> Result<()> {
    if p < &nat(5) || a < &nat(2) || a > &(p.clone() - nat(2)) {
        return Err(Error::InvalidKey(format!("a = {a} is outside [2, p-2]")));
    }
    Ok(())
}

impl<T: Natural> PublicKey<T> {
    /// Validating constructor.
    pub fn new(p: T, r: T, s: T) -> Result<Self> {
        let key = PublicKey { p, r, s };
        key.validate()?;
        Ok(key)
    }

    /// Checks every public invariant. Consistency of `s` with a secret exponent cannot be
    /// checked without that exponent.
    pub fn validate(&self) -> Result<()> {
        check_group(&self.p, &self.r)?;
        if self.s.is_zero() || self.s >= self.p {
            return Err(Error::InvalidKey(format!(
                "s = {} is outside [1, p-1]",
                self.s
            )));
        }
        Ok(())
    }

    pub fn bits(&self) -> u64 {
        self.p.bit_len()
    }
}

impl<T: Natural> PrivateKey<T> {
    pub fn new(p: T, r: T, a: T) -> Result<Self> {
        let key = PrivateKey { p, r, a };
        key.validate()?;
        Ok(key)
    }

    pub fn validate(&self) -> Result<()> {
        check_group(&self.p, &self.r)?;
        check_exponent(&self.p, &self.a)
    }
}

/// `(r, s = r^a mod p, p)` for a private key.
pub fn derive_public<T: Natural>(private: &PrivateKey<T>) -> Result<PublicKey<T>> {
    check_exponent(&private.p, &private.a)?;
    Ok(PublicKey {
        p: private.p.clone(),
        r: private.r.clone(),
        s: mod_exp(&private.r, &private.a, &private.p)?,
    })
}

/// Fresh keypair over a `bits`-bit safe prime.
///
/// `r` is the smallest primitive root of `p`; `a` is uniform in `[2, p-2]`.
pub fn generate_keypair<T: Natural, R: Rng + ?Sized>(bits: u64, rng: &mut R) -> Result<KeyPair<T>> {
    if bits < MIN_KEY_BITS {
        return Err(Error::KeyTooSmall {
            bits,
            min: MIN_KEY_BITS,
        });
    }
    let p: T = gen_safe_prime(bits, rng)?;
    let q = (p.clone() - T::one()) / nat(2);
    let factors = FactorSet::from_pairs([(nat(2), 1), (q, 1)])?;
    let r = find_primitive_root(&p, &factors)?;
    let a = uniform_inclusive(&nat(2), &(p.clone() - nat(2)), rng);
    let private = PrivateKey { p, r, a };
    let public = derive_public(&private)?;
    Ok(KeyPair { public, private })
}

impl<T: Natural> KeyPair<T> {
    pub fn warning(&self) -> Option<String> {
        key_size_warning(self.public.bits())
    }
}

impl<T: Natural> fmt::Display for PublicKey<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{PUBLIC_HEADER}\np={}\nr={}\ns={}\n",
            self.p, self.r, self.s
        )
    }
}

impl<T: Natural> fmt::Display for PrivateKey<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{PRIVATE_HEADER}\np={}\nr={}\na={}\n",
            self.p, self.r, self.a
        )
    }
}

/// Splits a key file into its header and three `name=value` fields.
fn parse_fields<T: Natural>(text: &str, header: &str, names: [&str; 3]) -> Result<[T; 3]> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines: Vec<&str> = body.split('\n').collect();
    let parse_err = |line: usize, reason: String| Error::KeyParse { line, reason };

    if lines[0] != header {
        return Err(parse_err(1, format!("expected header `{header}`")));
    }
    if lines.len() != 4 {
        let offending = if lines.len() < 4 { lines.len() + 1 } else { 5 };
        return Err(parse_err(
            offending,
            format!("expected exactly 4 lines, found {}", lines.len()),
        ));
    }

    let mut values = Vec::with_capacity(3);
    for (i, name) in names.iter().enumerate() {
        let line_no = i + 2;
        let line = lines[i + 1];
        let digits = line
            .strip_prefix(name)
            .and_then(|rest| rest.strip_prefix('='))
            .ok_or_else(|| parse_err(line_no, format!("expected `{name}=<decimal>`")))?;
        let canonical = !digits.is_empty()
            && digits.bytes().all(|b| b.is_ascii_digit())
            && (digits == "0" || !digits.starts_with('0'));
        if !canonical {
            return Err(parse_err(
                line_no,
                format!("`{name}` is not a canonical decimal integer"),
            ));
        }
        let value = T::from_decimal(digits)
            .ok_or_else(|| parse_err(line_no, format!("`{name}` does not fit the scalar type")))?;
        values.push(value);
    }
    Ok(values.try_into().expect("three fields"))
}

/// Parses and validates public key text.
pub fn parse_public<T: Natural>(text: &str) -> Result<PublicKey<T>> {
    let [p, r, s] = parse_fields(text, PUBLIC_HEADER, ["p", "r", "s"])?;
    PublicKey::new(p, r, s)
}

/// Parses and validates private key text.
pub fn parse_private<T: Natural>(text: &str) -> Result<PrivateKey<T>> {
    let [p, r, a] = parse_fields(text, PRIVATE_HEADER, ["p", "r", "a"])?;
    PrivateKey::new(p, r, a)
}

pub fn save_public<T: Natural>(path: impl AsRef<Path>, key: &PublicKey<T>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, key.to_string()).map_err(|e| Error::io(path, e))
}

pub fn save_private<T: Natural>(path: impl AsRef<Path>, key: &PrivateKey<T>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, key.to_string()).map_err(|e| Error::io(path, e))
}

pub fn load_public<T: Natural>(path: impl AsRef<Path>) -> Result<PublicKey<T>> {
    let path = path.as_ref();
    parse_public(&read_text(path)?)
}

pub fn load_private<T: Natural>(path: impl AsRef<Path>) -> Result<PrivateKey<T>> {
    let path = path.as_ref();
    parse_private(&read_text(path)?)
}

fn read_text(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|_| Error::KeyParse {
        line: 1,
        reason: "file is not UTF-8".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn order_by_enumeration(r: u64, p: u64) -> u64 {
        let mut acc = r % p;
        let mut k = 1;
        while acc != 1 {
            acc = acc * r % p;
            k += 1;
        }
        k
    }

    #[test]
    fn toy_key_matches_hand_evaluation() {
        let private = PrivateKey::new(7u64, 3, 2).unwrap();
        let public = derive_public(&private).unwrap();
        assert_eq!(public, PublicKey { p: 7, r: 3, s: 2 });
    }

    #[test]
    fn exponent_bounds_are_enforced() {
        let bad = PrivateKey {
            p: 7u64,
            r: 3,
            a: 1,
        };
        assert!(matches!(derive_public(&bad), Err(Error::InvalidKey(_))));
        assert!(PrivateKey::new(7u64, 3, 6).is_err());
        assert!(PrivateKey::new(7u64, 3, 5).is_ok());
        assert!(PrivateKey::new(7u64, 2, 3).is_err());
        assert!(PrivateKey::new(9u64, 2, 3).is_err());
    }

    #[test]
    fn generated_pairs_satisfy_invariants() {
        let mut rng = ChaCha20Rng::seed_from_u64(12);
        for _ in 0..100 {
            let pair: KeyPair<u64> = generate_keypair(12, &mut rng).unwrap();
            let KeyPair { public, private } = &pair;
            assert_eq!(public.p.bit_len(), 12);
            assert_eq!(
                public.s,
                mod_exp(&private.r, &private.a, &private.p).unwrap()
            );
            assert_eq!(order_by_enumeration(public.r, public.p), public.p - 1);
            assert!(private.a >= 2 && private.a <= public.p - 2);
            assert!(pair.warning().is_some());
            public.validate().unwrap();
            private.validate().unwrap();
        }
    }

    #[test]
    fn generation_is_seed_deterministic() {
        let a: KeyPair<BigUint> = generate_keypair(64, &mut ChaCha20Rng::seed_from_u64(5)).unwrap();
        let b: KeyPair<BigUint> = generate_keypair(64, &mut ChaCha20Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
        assert_eq!(derive_public(&a.private).unwrap(), a.public);
    }

    #[test]
    fn too_small_is_rejected() {
        let mut rng = ChaCha20Rng::seed_from_u64(0);
        assert!(matches!(
            generate_keypair::<u64, _>(9, &mut rng),
            Err(Error::KeyTooSmall { bits: 9, .. })
        ));
        assert!(key_size_warning(128).is_none());
    }

    #[test]
    fn text_format_is_exact() {
        let key = PrivateKey::new(7u64, 3, 2).unwrap();
        assert_eq!(key.to_string(), "ELGAMAL PRIVATE v1\np=7\nr=3\na=2\n");
        let public = derive_public(&key).unwrap();
        assert_eq!(public.to_string(), "ELGAMAL PUBLIC v1\np=7\nr=3\ns=2\n");
        assert_eq!(parse_public::<u64>(&public.to_string()).unwrap(), public);
        assert_eq!(parse_private::<u64>(&key.to_string()).unwrap(), key);
    }

    #[test]
    fn public_loader_cannot_check_s() {
        // Nothing ties s to an exponent without the private half.
        let text = "ELGAMAL PUBLIC v1\np=7\nr=3\ns=4\n";
        assert!(parse_public::<u64>(text).is_ok());
    }

    #[test]
    fn parse_errors_name_the_line() {
        let cases = [
            ("ELGAMAL PUBLIC v2\np=7\nr=3\ns=2\n", 1),
            ("ELGAMAL PUBLIC v1\np=07\nr=3\ns=2\n", 2),
            ("ELGAMAL PUBLIC v1\np=7\nr= 3\ns=2\n", 3),
            ("ELGAMAL PUBLIC v1\np=7\nr=3\na=2\n", 4),
            ("ELGAMAL PUBLIC v1\np=7\nr=3\ns=\n", 4),
            ("ELGAMAL PUBLIC v1\np=7\r\nr=3\ns=2\n", 2),
        ];
        for (text, expected) in cases {
            match parse_public::<u64>(text) {
                Err(Error::KeyParse { line, .. }) => assert_eq!(line, expected, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(matches!(
            parse_public::<u64>("ELGAMAL PUBLIC v1\np=7\nr=3\n"),
            Err(Error::KeyParse { .. })
        ));
    }

    #[test]
    fn invariant_violations_on_load() {
        assert!(matches!(
            parse_private::<u64>("ELGAMAL PRIVATE v1\np=7\nr=3\na=6\n"),
            Err(Error::InvalidKey(_))
        ));
        assert!(matches!(
            parse_public::<u64>("ELGAMAL PUBLIC v1\np=8\nr=3\ns=2\n"),
            Err(Error::InvalidKey(_))
        ));
        assert!(matches!(
            parse_public::<u64>("ELGAMAL PUBLIC v1\np=7\nr=3\ns=0\n"),
            Err(Error::InvalidKey(_))
        ));
    }

    #[test]
    fn file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let pair: KeyPair<BigUint> =
            generate_keypair(64, &mut ChaCha20Rng::seed_from_u64(1)).unwrap();
        save_public(dir.path().join("k.pub"), &pair.public).unwrap();
        save_private(dir.path().join("k.key"), &pair.private).unwrap();
        assert_eq!(
            load_public::<BigUint>(dir.path().join("k.pub")).unwrap(),
            pair.public
        );
        assert_eq!(
            load_private::<BigUint>(dir.path().join("k.key")).unwrap(),
            pair.private
        );
        assert!(matches!(
            load_public::<BigUint>(dir.path().join("missing")),
            Err(Error::Io { .. })
        ));
    }
}
