//! Per-element ElGamal over an image matrix.
//!
//! Each 8-bit sample `m` becomes `y = m · s^k mod p` alongside `x = r^k mod p`, and is
//! restored as `m = y · (x^a)^-1 mod p`. Two modes differ in how ephemeral exponents are
//! used:
//!
//! * [`Mode::Paper`] draws one `k` for the whole image and stores a single `x`. Equal
//!   plaintext samples produce equal ciphertext samples, and `m = 0` stays 0.
//! * [`Mode::PerPixel`] draws a fresh `k` per sample (planar row-major draw order) and
//!   encrypts `m + 1`, so there is no fixed point and no equality leak.

mod container;

use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::imagecodec::{Channels, ImageMatrix};
use crate::keys::{PrivateKey, PublicKey};
use crate::modmath::{mod_exp, mod_inv, nat, uniform_inclusive, Natural};

pub use container::{decode_cipher, encode_cipher, read_cipher, write_cipher, MAGIC};

/// Smallest modulus that exceeds every 8-bit sample (and every offset sample, 1..=256).
pub const MIN_IMAGE_MODULUS: u64 = 257;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// One ephemeral exponent and one `x` for the whole image.
    Paper,
    /// Fresh ephemeral exponent per sample, plaintext offset by one.
    PerPixel,
}

impl Mode {
    /// Container mode byte.
    pub fn to_byte(self) -> u8 {
        match self {
            Mode::Paper => 0x00,
            Mode::PerPixel => 0x01,
        }
    }

    pub fn from_byte(byte: u8) -> Option<Self> {
        match byte {
            0x00 => Some(Mode::Paper),
            0x01 => Some(Mode::PerPixel),
            _ => None,
        }
    }

    fn offset(self) -> u64 {
        match self {
            Mode::Paper => 0,
            Mode::PerPixel => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementCipher<T> {
    pub x: T,
    pub y: T,
}

/// Encrypted image: residues in `[0, p-1]`, planar row-major like [`ImageMatrix`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CipherImage<T> {
    p: T,
    mode: Mode,
    width: u32,
    height: u32,
    channels: Channels,
    x_values: Vec<T>,
    y_values: Vec<T>,
}

impl<T: Natural> CipherImage<T> {
    pub fn new(
        p: T,
        mode: Mode,
        width: u32,
        height: u32,
        channels: Channels,
        x_values: Vec<T>,
        y_values: Vec<T>,
    ) -> Result<Self> {
        if p < nat(MIN_IMAGE_MODULUS) {
            return Err(Error::ModulusTooSmall(p.to_string()));
        }
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument(format!(
                "cipher dimensions {width}x{height} must be positive"
            )));
        }
        let n = width as usize * height as usize * channels.count();
        let x_len = match mode {
            Mode::Paper => 1,
            Mode::PerPixel => n,
        };
        if y_values.len() != n || x_values.len() != x_len {
            return Err(Error::InvalidArgument(format!(
                "expected {x_len} x and {n} y residues, got {} and {}",
                x_values.len(),
                y_values.len()
            )));
        }
        if let Some(v) = x_values.iter().chain(&y_values).find(|v| **v >= p) {
            return Err(Error::InvalidArgument(format!(
                "residue {v} is not below p = {p}"
            )));
        }
        Ok(CipherImage {
            p,
            mode,
            width,
            height,
            channels,
            x_values,
            y_values,
        })
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn channels(&self) -> Channels {
        self.channels
    }

    pub fn x_values(&self) -> &[T] {
        &self.x_values
    }

    pub fn y_values(&self) -> &[T] {
        &self.y_values
    }

    /// Ciphertext pair of element `index`.
    pub fn element(&self, index: usize) -> ElementCipher<T> {
        let x = match self.mode {
            Mode::Paper => self.x_values[0].clone(),
            Mode::PerPixel => self.x_values[index].clone(),
        };
        ElementCipher {
            x,
            y: self.y_values[index].clone(),
        }
    }
}

fn check_ephemeral<T: Natural>(k: &T, p: &T) -> Result<()> {
    if k.is_zero() || k > &(p.clone() - nat(2)) {
        return Err(Error::InvalidEphemeral(k.to_string()));
    }
    Ok(())
}

/// `(r^k mod p, m · s^k mod p)`.
pub fn encrypt_value<T: Natural>(m: &T, key: &PublicKey<T>, k: &T) -> Result<ElementCipher<T>> {
    let p = &key.p;
    if m >= p {
        return Err(Error::PlaintextOutOfRange {
            value: m.to_string(),
            modulus: p.to_string(),
        });
    }
    check_ephemeral(k, p)?;
    let x = mod_exp(&key.r, k, p)?;
    let mask = mod_exp(&key.s, k, p)?;
    Ok(ElementCipher {
        x,
        y: m.mul_mod(&mask, p),
    })
}

/// `y · (x^a)^-1 mod p`.
pub fn decrypt_value<T: Natural>(c: &ElementCipher<T>, key: &PrivateKey<T>) -> Result<T> {
    let p = &key.p;
    if &c.x >= p || &c.y >= p {
        return Err(Error::InvalidArgument(format!(
            "ciphertext ({}, {}) is not reduced modulo {p}",
            c.x, c.y
        )));
    }
    let shared = mod_exp(&c.x, &key.a, p)?;
    let unmask = mod_inv(&shared, p)?;
    Ok(c.y.mul_mod(&unmask, p))
}

fn check_image_modulus<T: Natural>(p: &T) -> Result<()> {
    if p < &nat(MIN_IMAGE_MODULUS) {
        return Err(Error::ModulusTooSmall(p.to_string()));
    }
    Ok(())
}

/// Draws the ephemeral exponents for `img` and encrypts it.
///
/// All exponents are drawn up front, one for [`Mode::Paper`] or one per sample in planar
/// row-major order for [`Mode::PerPixel`], so a seeded `rng` fixes the result.
pub fn encrypt_image<T: Natural, R: Rng + ?Sized>(
    img: &ImageMatrix,
    key: &PublicKey<T>,
    mode: Mode,
    rng: &mut R,
) -> Result<CipherImage<T>> {
    check_image_modulus(&key.p)?;
    let high = key.p.clone() - nat(2);
    let draws = match mode {
        Mode::Paper => 1,
        Mode::PerPixel => img.values().len(),
    };
    let ephemerals: Vec<T> = (0..draws)
        .map(|_| uniform_inclusive(&T::one(), &high, rng))
        .collect();
    encrypt_image_with_ephemerals(img, key, mode, &ephemerals)
}

/// Encrypts `img` with caller-chosen ephemeral exponents: exactly one for
/// [`Mode::Paper`], one per sample for [`Mode::PerPixel`].
pub fn encrypt_image_with_ephemerals<T: Natural>(
    img: &ImageMatrix,
    key: &PublicKey<T>,
    mode: Mode,
    ephemerals: &[T],
) -> Result<CipherImage<T>> {
    let p = &key.p;
    check_image_modulus(p)?;
    let expected = match mode {
        Mode::Paper => 1,
        Mode::PerPixel => img.values().len(),
    };
    if ephemerals.len() != expected {
        return Err(Error::InvalidArgument(format!(
            "{mode:?} mode needs {expected} ephemeral exponents, got {}",
            ephemerals.len()
        )));
    }
    for k in ephemerals {
        check_ephemeral(k, p)?;
    }

    let offset = mode.offset();
    let (x_values, y_values) = match mode {
        Mode::Paper => {
            let k = &ephemerals[0];
            let x = mod_exp(&key.r, k, p)?;
            let mask = mod_exp(&key.s, k, p)?;
            let y: Vec<T> = img
                .values()
                .par_iter()
                .map(|&m| nat::<T>(m as u64).mul_mod(&mask, p))
                .collect();
            (vec![x], y)
        }
        Mode::PerPixel => {
            let pairs = img
                .values()
                .par_iter()
                .zip(ephemerals.par_iter())
                .map(|(&m, k)| encrypt_value(&nat(m as u64 + offset), key, k))
                .collect::<Result<Vec<_>>>()?;
            pairs.into_iter().map(|c| (c.x, c.y)).unzip()
        }
    };
    CipherImage::new(
        p.clone(),
        mode,
        img.width(),
        img.height(),
        img.channels(),
        x_values,
        y_values,
    )
}

/// Restores the plaintext matrix. Any element that does not land back in the sample
/// range means the key is wrong or the data is corrupt.
pub fn decrypt_image<T: Natural>(c: &CipherImage<T>, key: &PrivateKey<T>) -> Result<ImageMatrix> {
    if c.p != key.p {
        return Err(Error::KeyMismatch {
            cipher: c.p.to_string(),
            key: key.p.to_string(),
        });
    }
    let p = &key.p;
    let decrypted: Vec<Result<T>> = match c.mode {
        Mode::Paper => {
            let shared = mod_exp(&c.x_values[0], &key.a, p)?;
            let unmask = mod_inv(&shared, p)?;
            c.y_values
                .par_iter()
                .map(|y| Ok(y.mul_mod(&unmask, p)))
                .collect()
        }
        Mode::PerPixel => c
            .x_values
            .par_iter()
            .zip(c.y_values.par_iter())
            .map(|(x, y)| {
                decrypt_value(
                    &ElementCipher {
                        x: x.clone(),
                        y: y.clone(),
                    },
                    key,
                )
            })
            .collect(),
    };

    let offset = c.mode.offset();
    let mut values = Vec::with_capacity(decrypted.len());
    for (index, value) in decrypted.into_iter().enumerate() {
        let value = value?;
        let sample = value
            .to_u64()
            .and_then(|v| v.checked_sub(offset))
            .filter(|v| *v <= 255);
        match sample {
            Some(v) => values.push(v as u8),
            None => {
                return Err(Error::WrongKeyOrCorrupt {
                    index,
                    value: value.to_string(),
                })
            }
        }
    }
    ImageMatrix::new(c.width, c.height, c.channels, values)
}

/// Displayable 8-bit rendering of the ciphertext, `y mod 256` per sample. Not decryptable.
pub fn cipher_preview<T: Natural>(c: &CipherImage<T>) -> ImageMatrix {
    let modulus: T = nat(256);
    let values = c
        .y_values
        .iter()
        .map(|y| {
            (y.clone() % modulus.clone())
                .to_u8()
                .expect("reduced below 256")
        })
        .collect();
    ImageMatrix::new(c.width, c.height, c.channels, values).expect("shape copied from cipher")
}
