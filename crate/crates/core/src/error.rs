use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid-modulus: modulus must be at least 2")]
    InvalidModulus,

    #[error("not-invertible: {0} has no inverse modulo {1}")]
    NotInvertible(String, String),

    #[error("invalid-argument: {0}")]
    InvalidArgument(String),

    #[error("factorization-incomplete: composite cofactor {0} left after effort bound")]
    FactorizationIncomplete(String),

    #[error("key-too-small: {bits} bits requested, at least {min} required")]
    KeyTooSmall { bits: u64, min: u64 },

    #[error("invalid-key: {0}")]
    InvalidKey(String),

    #[error("key-parse: line {line}: {reason}")]
    KeyParse { line: usize, reason: String },

    #[error("plaintext-out-of-range: value {value} is not below modulus {modulus}")]
    PlaintextOutOfRange { value: String, modulus: String },

    #[error("invalid-ephemeral: k = {0} is outside [1, p-2]")]
    InvalidEphemeral(String),

    #[error("modulus-too-small: p = {0}, image encryption requires p >= 257")]
    ModulusTooSmall(String),

    #[error("key-mismatch: cipher modulus {cipher} differs from key modulus {key}")]
    KeyMismatch { cipher: String, key: String },

    #[error("wrong-key-or-corrupt: element {index} decrypted to {value}, outside the pixel range")]
    WrongKeyOrCorrupt { index: usize, value: String },

    #[error("container-format: at byte {offset}: {reason}")]
    ContainerFormat { offset: usize, reason: String },

    #[error("unsupported-image: {0}")]
    UnsupportedImage(String),

    #[error("image-decode: {0}")]
    ImageDecode(String),

    #[error(
        "lossy-output-refused: {0} would alter pixel values; write PNG or pass the lossy override"
    )]
    LossyOutputRefused(PathBuf),

    #[error("invalid-image: {0}")]
    InvalidImage(String),

    #[error("insufficient-data: {0}")]
    InsufficientData(String),

    #[error("refuse-large-modulus: p = {0} exceeds the baby-step giant-step bound 2^26")]
    RefuseLargeModulus(String),

    #[error("invalid-comparison: {0}")]
    InvalidComparison(String),

    #[error("internal-error: {0}")]
    Internal(String),

    #[error("io: {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the CLI: 3 for cryptographic failures, 4 for I/O and format failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::KeyParse { .. }
            | Error::ContainerFormat { .. }
            | Error::UnsupportedImage(_)
            | Error::ImageDecode(_)
            | Error::LossyOutputRefused(_)
            | Error::InvalidImage(_)
            | Error::InvalidComparison(_)
            | Error::InsufficientData(_)
            | Error::Io { .. } => 4,
            _ => 3,
        }
    }
}
