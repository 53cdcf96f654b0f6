//! `.eic` cipher container. Big-endian, no padding:
//!
//! | bytes | field                                          |
//! |-------|------------------------------------------------|
//! | 4     | magic `EIC1`                                   |
//! | 1     | mode: `0x00` paper, `0x01` per-pixel + offset  |
//! | 1     | channels: 1 or 3                               |
//! | 4     | width                                          |
//! | 4     | height                                         |
//! | 2     | `L` = byte length of p                         |
//! | L     | p                                              |
//! | L·nx  | x residues (nx = 1 or width·height·channels)   |
//! | L·n   | y residues, planar row-major                   |

use std::fs;
use std::path::Path;

use super::{CipherImage, Mode, MIN_IMAGE_MODULUS};
use crate::error::{Error, Result};
use crate::imagecodec::Channels;
use crate::modmath::{nat, Natural};

pub const MAGIC: &[u8; 4] = b"EIC1";

const HEADER_LEN: usize = 16;

pub fn encode_cipher<T: Natural>(c: &CipherImage<T>) -> Vec<u8> {
    let p_bytes = c.p.to_be_bytes_min();
    let width = p_bytes.len();
    let residues = c.x_values.len() + c.y_values.len();
    let mut out = Vec::with_capacity(HEADER_LEN + width * (residues + 1));
    out.extend_from_slice(MAGIC);
    out.push(c.mode.to_byte());
    out.push(c.channels.count() as u8);
    out.extend_from_slice(&c.width.to_be_bytes());
    out.extend_from_slice(&c.height.to_be_bytes());
    out.extend_from_slice(&(width as u16).to_be_bytes());
    out.extend_from_slice(&p_bytes);
    for v in c.x_values.iter().chain(&c.y_values) {
        let bytes = v.to_be_bytes_min();
        out.resize(out.len() + width - bytes.len(), 0);
        out.extend_from_slice(&bytes);
    }
    out
}

fn format_err(offset: usize, reason: impl Into<String>) -> Error {
    Error::ContainerFormat {
        offset,
        reason: reason.into(),
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8]> {
        let remaining = self.bytes.len() - self.pos;
        if remaining < n {
            return Err(format_err(
                self.bytes.len(),
                format!("truncated {what}: needed {n} bytes, {remaining} remain"),
            ));
        }
        let slice = &self.bytes[self.pos..self.pos + n];
        self.pos += n;
        Ok(slice)
    }

    fn u8(&mut self, what: &str) -> Result<u8> {
        Ok(self.take(1, what)?[0])
    }

    fn u16(&mut self, what: &str) -> Result<u16> {
        Ok(u16::from_be_bytes(self.take(2, what)?.try_into().unwrap()))
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_be_bytes(self.take(4, what)?.try_into().unwrap()))
    }
}

pub fn decode_cipher<T: Natural>(bytes: &[u8]) -> Result<CipherImage<T>> {
    let mut rd = Reader { bytes, pos: 0 };

    if rd.take(4, "magic")? != MAGIC {
        return Err(format_err(0, "bad magic, expected `EIC1`"));
    }
    let mode_byte = rd.u8("mode")?;
    let mode = Mode::from_byte(mode_byte)
        .ok_or_else(|| format_err(4, format!("unknown mode byte {mode_byte:#04x}")))?;
    let channel_byte = rd.u8("channels")?;
    let channels = Channels::from_count(channel_byte)
        .ok_or_else(|| format_err(5, format!("channel count {channel_byte} is not 1 or 3")))?;
    let width = rd.u32("width")?;
    if width == 0 {
        return Err(format_err(6, "width is zero"));
    }
    let height = rd.u32("height")?;
    if height == 0 {
        return Err(format_err(10, "height is zero"));
    }
    let residue_len = rd.u16("modulus length")? as usize;
    if residue_len == 0 {
        return Err(format_err(14, "modulus length is zero"));
    }

    let p_bytes = rd.take(residue_len, "modulus")?;
    if p_bytes[0] == 0 {
        return Err(format_err(
            HEADER_LEN,
            format!("declared residue width {residue_len} is longer than the byte length of p"),
        ));
    }
    let p = T::from_be_slice(p_bytes)
        .ok_or_else(|| format_err(HEADER_LEN, "modulus does not fit the scalar type"))?;
    if p < nat(MIN_IMAGE_MODULUS) {
        return Err(format_err(HEADER_LEN, format!("modulus {p} is below 257")));
    }

    let count = (width as usize)
        .checked_mul(height as usize)
        .and_then(|n| n.checked_mul(channels.count()))
        .ok_or_else(|| format_err(6, "dimensions overflow"))?;
    let x_count = match mode {
        Mode::Paper => 1,
        Mode::PerPixel => count,
    };
    let body_start = rd.pos;
    let expected_len = x_count
        .checked_add(count)
        .and_then(|n| n.checked_mul(residue_len))
        .and_then(|n| n.checked_add(body_start))
        .ok_or_else(|| format_err(6, "dimensions overflow"))?;
    if bytes.len() < expected_len {
        let block = if bytes.len() < body_start + x_count * residue_len {
            "X block"
        } else {
            "Y block"
        };
        return Err(format_err(
            bytes.len(),
            format!(
                "truncated {block}: file has {} bytes, header implies {expected_len}",
                bytes.len()
            ),
        ));
    }
    if bytes.len() > expected_len {
        return Err(format_err(
            expected_len,
            format!(
                "{} trailing bytes after the Y block",
                bytes.len() - expected_len
            ),
        ));
    }

    let mut read_block = |n: usize, what: &str| -> Result<Vec<T>> {
        (0..n)
            .map(|_| {
                let offset = rd.pos;
                let chunk = rd.take(residue_len, what)?;
                let value = T::from_be_slice(chunk)
                    .filter(|v| v < &p)
                    .ok_or_else(|| format_err(offset, format!("{what} residue is not below p")))?;
                Ok(value)
            })
            .collect()
    };
    let x_values = read_block(x_count, "X")?;
    let y_values = read_block(count, "Y")?;

    CipherImage::new(p, mode, width, height, channels, x_values, y_values)
}

pub fn write_cipher<T: Natural>(path: impl AsRef<Path>, c: &CipherImage<T>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_cipher(c)).map_err(|e| Error::io(path, e))
}

pub fn read_cipher<T: Natural>(path: impl AsRef<Path>) -> Result<CipherImage<T>> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_cipher(&bytes)
}
