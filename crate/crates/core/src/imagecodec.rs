//! Pixel matrices and their PNG/JPEG encodings.
//!
//! An [`ImageMatrix`] stores 8-bit samples in planar order: the whole first channel
//! row-major, then the second, then the third. Color images are always RGB.

use std::fs;
use std::io::Cursor;
use std::path::Path;

use image::codecs::jpeg::JpegEncoder;
use image::codecs::png::PngEncoder;
use image::{DynamicImage, ExtendedColorType, ImageEncoder, ImageFormat};

use crate::error::{Error, Result};

const JPEG_QUALITY: u8 = 90;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Channels {
    Gray,
    Rgb,
}

impl Channels {
    pub fn count(self) -> usize {
        match self {
            Channels::Gray => 1,
            Channels::Rgb => 3,
        }
    }

    pub fn from_count(count: u8) -> Option<Self> {
        match count {
            1 => Some(Channels::Gray),
            3 => Some(Channels::Rgb),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageMatrix {
    width: u32,
    height: u32,
    channels: Channels,
    values: Vec<u8>,
}

impl ImageMatrix {
    /// Wraps planar row-major samples. Both dimensions must be positive.
    pub fn new(width: u32, height: u32, channels: Channels, values: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidImage(format!(
                "dimensions {width}x{height} must be positive"
            )));
        }
        let expected = width as usize * height as usize * channels.count();
        if values.len() != expected {
            return Err(Error::InvalidImage(format!(
                "{} values given, {width}x{height}x{} needs {expected}",
                values.len(),
                channels.count()
            )));
        }
        Ok(ImageMatrix {
            width,
            height,
            channels,
            values,
        })
    }

    /// Builds a matrix from interleaved samples (`RGBRGB...` for color).
    pub fn from_interleaved(
        width: u32,
        height: u32,
        channels: Channels,
        interleaved: &[u8],
    ) -> Result<Self> {
        let n = channels.count();
        let pixels = width as usize * height as usize;
        if interleaved.len() != pixels * n {
            return Err(Error::InvalidImage(format!(
                "{} interleaved samples for {pixels} pixels of {n} channels",
                interleaved.len()
            )));
        }
        let mut values = vec![0u8; interleaved.len()];
        for (i, px) in interleaved.chunks_exact(n).enumerate() {
            for (c, v) in px.iter().enumerate() {
                values[c * pixels + i] = *v;
            }
        }
        ImageMatrix::new(width, height, channels, values)
    }

    pub fn to_interleaved(&self) -> Vec<u8> {
        let n = self.channels.count();
        let mut out = vec![0u8; self.values.len()];
        for c in 0..n {
            for (i, v) in self.plane(c).iter().enumerate() {
                out[i * n + c] = *v;
            }
        }
        out
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

    pub fn pixel_count(&self) -> usize {
        self.width as usize * self.height as usize
    }

    /// All samples, planar row-major.
    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u8> {
        self.values
    }

    /// One channel plane, row-major.
    pub fn plane(&self, channel: usize) -> &[u8] {
        let n = self.pixel_count();
        &self.values[channel * n..(channel + 1) * n]
    }

    pub fn get(&self, channel: usize, row: u32, col: u32) -> u8 {
        self.plane(channel)[row as usize * self.width as usize + col as usize]
    }

    pub fn same_shape(&self, other: &ImageMatrix) -> bool {
        self.width == other.width && self.height == other.height && self.channels == other.channels
    }
}

/// Decodes PNG or JPEG bytes into a matrix. Gray stays one channel, color becomes RGB;
/// alpha and 16-bit samples are refused.
pub fn decode_image(bytes: &[u8]) -> Result<ImageMatrix> {
    let format = image::guess_format(bytes)
        .map_err(|_| Error::UnsupportedImage("not a PNG or JPEG file".into()))?;
    if !matches!(format, ImageFormat::Png | ImageFormat::Jpeg) {
        return Err(Error::UnsupportedImage(format!(
            "{format:?} input; only PNG and JPEG are read"
        )));
    }
    let decoded = image::load_from_memory_with_format(bytes, format)
        .map_err(|e| Error::ImageDecode(e.to_string()))?;
    let (width, height) = (decoded.width(), decoded.height());
    match decoded {
        DynamicImage::ImageLuma8(buf) => {
            ImageMatrix::new(width, height, Channels::Gray, buf.into_raw())
        }
        DynamicImage::ImageRgb8(buf) => {
            ImageMatrix::from_interleaved(width, height, Channels::Rgb, buf.as_raw())
        }
        DynamicImage::ImageLumaA8(_) | DynamicImage::ImageRgba8(_) => Err(Error::UnsupportedImage(
            "images with an alpha channel are not supported".into(),
        )),
        DynamicImage::ImageLuma16(_)
        | DynamicImage::ImageLumaA16(_)
        | DynamicImage::ImageRgb16(_)
        | DynamicImage::ImageRgba16(_) => Err(Error::UnsupportedImage(
            "16-bit samples are not supported".into(),
        )),
        other => Err(Error::UnsupportedImage(format!(
            "sample layout {:?} is not supported",
            other.color()
        ))),
    }
}

pub fn load_image(path: impl AsRef<Path>) -> Result<ImageMatrix> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_image(&bytes)
}

fn color_type(channels: Channels) -> ExtendedColorType {
    match channels {
        Channels::Gray => ExtendedColorType::L8,
        Channels::Rgb => ExtendedColorType::Rgb8,
    }
}

/// Lossless PNG encoding.
pub fn encode_png(m: &ImageMatrix) -> Result<Vec<u8>> {
    let mut out = Cursor::new(Vec::new());
    PngEncoder::new(&mut out)
        .write_image(
            &m.to_interleaved(),
            m.width,
            m.height,
            color_type(m.channels),
        )
        .map_err(|e| Error::ImageDecode(format!("PNG encoding failed: {e}")))?;
    Ok(out.into_inner())
}

fn encode_jpeg(m: &ImageMatrix) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    JpegEncoder::new_with_quality(&mut out, JPEG_QUALITY)
        .write_image(
            &m.to_interleaved(),
            m.width,
            m.height,
            color_type(m.channels),
        )
        .map_err(|e| Error::ImageDecode(format!("JPEG encoding failed: {e}")))?;
    Ok(out)
}

/// Writes `m` as PNG. A `.jpg`/`.jpeg` path is refused unless `allow_lossy` is set,
/// because lossy storage alters pixel values.
pub fn save_image(m: &ImageMatrix, path: impl AsRef<Path>, allow_lossy: bool) -> Result<()> {
    let path = path.as_ref();
    let ext = path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase);
    let bytes = match ext.as_deref() {
        Some("png") => encode_png(m)?,
        Some("jpg" | "jpeg") if allow_lossy => encode_jpeg(m)?,
        Some("jpg" | "jpeg") => return Err(Error::LossyOutputRefused(path.to_path_buf())),
        _ => {
            return Err(Error::UnsupportedImage(format!(
                "cannot infer an output format from {}; use .png",
                path.display()
            )))
        }
    };
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}
