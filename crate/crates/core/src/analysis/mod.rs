//! Measurable stand-ins for "the ciphertext looks like noise": value histograms,
//! Shannon entropy and adjacent-pixel correlation, plus toy-scale key recovery by
//! baby-step giant-step.
//!
//! Statistics are generic over the float type. Cipher residues are not 8-bit, so they are
//! analysed through the `y mod 256` preview; reports record which source they describe.

mod dlog;
mod stats;

use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::imagecodec::ImageMatrix;

pub use dlog::{bsgs_dlog, recover_private_key, KeyRecovery, BSGS_MAX_BITS};
pub use stats::{adjacent_correlation, entropy_of_counts, histogram, shannon_entropy, Direction};

pub const PLAINTEXT_SOURCE: &str = "plaintext";
pub const PREVIEW_SOURCE: &str = "cipher preview (y mod 256)";

/// Statistics for one image. Vectors hold one entry per channel; a correlation is `None`
/// when the image has no neighbor pairs in that direction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport<F> {
    pub source: String,
    pub width: u32,
    pub height: u32,
    pub channels: usize,
    pub histogram: Vec<Vec<u64>>,
    pub entropy_bits: Vec<F>,
    pub correlation_h: Vec<Option<F>>,
    pub correlation_v: Vec<Option<F>>,
    pub correlation_d: Vec<Option<F>>,
    /// Decimal secret exponent, when key recovery ran.
    pub recovered_exponent: Option<String>,
    pub elapsed_ms: Option<f64>,
}

impl<F: Float> AnalysisReport<F> {
    pub fn from_image(m: &ImageMatrix, source: &str) -> Self {
        let channels = m.channels().count();
        let correlation = |d| match adjacent_correlation::<F>(m, d) {
            Ok(v) => v.into_iter().map(Some).collect(),
            Err(_) => vec![None; channels],
        };
        AnalysisReport {
            source: source.to_string(),
            width: m.width(),
            height: m.height(),
            channels,
            histogram: histogram(m).iter().map(|h| h.to_vec()).collect(),
            entropy_bits: shannon_entropy(m),
            correlation_h: correlation(Direction::Horizontal),
            correlation_v: correlation(Direction::Vertical),
            correlation_d: correlation(Direction::Diagonal),
            recovered_exponent: None,
            elapsed_ms: None,
        }
    }

    pub fn with_recovery<T: std::fmt::Display>(mut self, recovery: &KeyRecovery<T>) -> Self {
        self.recovered_exponent = Some(recovery.private.a.to_string());
        self.elapsed_ms = Some(recovery.elapsed.as_secs_f64() * 1e3);
        self
    }
}

/// Side-by-side reports for a plaintext and its cipher preview.
pub fn compare_report<F: Float>(
    plain: &ImageMatrix,
    cipher_preview: &ImageMatrix,
) -> Result<(AnalysisReport<F>, AnalysisReport<F>)> {
    if !plain.same_shape(cipher_preview) {
        return Err(Error::InvalidComparison(format!(
            "plaintext is {}x{}x{}, preview is {}x{}x{}",
            plain.width(),
            plain.height(),
            plain.channels().count(),
            cipher_preview.width(),
            cipher_preview.height(),
            cipher_preview.channels().count()
        )));
    }
    Ok((
        AnalysisReport::from_image(plain, PLAINTEXT_SOURCE),
        AnalysisReport::from_image(cipher_preview, PREVIEW_SOURCE),
    ))
}

#[derive(Serialize)]
struct ReportDocument<'a, F> {
    plain: &'a AnalysisReport<F>,
    cipher: Option<&'a AnalysisReport<F>>,
}

/// JSON document `{"plain": ..., "cipher": ... | null}`.
pub fn report_json<F: Float + Serialize>(
    plain: &AnalysisReport<F>,
    cipher: Option<&AnalysisReport<F>>,
) -> String {
    serde_json::to_string_pretty(&ReportDocument { plain, cipher }).expect("report serializes")
}
