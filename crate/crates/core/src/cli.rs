//! Command-line front end: `keygen`, `encrypt`, `decrypt`, `preview`, `analyze`.
//!
//! Exit codes: 0 success, 2 usage error, 3 cryptographic error, 4 I/O or format error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::analysis::{self, AnalysisReport, PLAINTEXT_SOURCE};
use crate::cipher::{self, Mode};
use crate::error::Result;
use crate::imagecodec;
use crate::keys::{self, key_size_warning};
use crate::{entropy_rng, seeded_rng, BigUint, RandomSource};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;

const SEED_HELP: &str = "Seed the random generator for reproducible output. \
                         INSECURE: anyone who knows the seed can reproduce every secret";

#[derive(Debug, Parser)]
#[command(
    name = "elgamal-image",
    version,
    about = "ElGamal encryption of grayscale and RGB images (toy key sizes; not for real secrets)"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// One ephemeral exponent for the whole image; equal pixels stay equal
    Paper,
    /// Fresh ephemeral exponent per sample
    Perpixel,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Paper => Mode::Paper,
            ModeArg::Perpixel => Mode::PerPixel,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a keypair over a safe prime
    Keygen {
        /// Bit length of the prime modulus (moduli under 128 bits are insecure)
        #[arg(long, default_value_t = 64)]
        bits: u64,
        #[arg(long, value_name = "P")]
        out_pub: PathBuf,
        #[arg(long, value_name = "Q")]
        out_priv: PathBuf,
        #[arg(long, value_name = "S", help = SEED_HELP)]
        seed: Option<u64>,
    },
    /// Encrypt a PNG or JPEG image into a .eic container
    Encrypt {
        #[arg(long = "pub", value_name = "P")]
        public: PathBuf,
        #[arg(long = "in", value_name = "IMG")]
        input: PathBuf,
        #[arg(long, value_name = "C.eic")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Perpixel)]
        mode: ModeArg,
        #[arg(long, value_name = "S", help = SEED_HELP)]
        seed: Option<u64>,
    },
    /// Decrypt a .eic container back into an image
    Decrypt {
        #[arg(long = "priv", value_name = "Q")]
        private: PathBuf,
        #[arg(long = "in", value_name = "C.eic")]
        input: PathBuf,
        #[arg(long, value_name = "OUT.png")]
        out: PathBuf,
        /// Permit a .jpg output even though lossy compression alters pixel values
        #[arg(long)]
        allow_lossy: bool,
    },
    /// Render the ciphertext (y mod 256) as a viewable image; the result cannot be decrypted
    Preview {
        #[arg(long = "in", value_name = "C.eic")]
        input: PathBuf,
        #[arg(long, value_name = "PRE.png")]
        out: PathBuf,
        #[arg(long)]
        allow_lossy: bool,
    },
    /// Write histogram, entropy and correlation statistics as JSON
    Analyze {
        #[arg(long = "in", value_name = "IMG")]
        input: PathBuf,
        /// Cipher container to compare against, through its mod-256 preview
        #[arg(long, value_name = "C.eic")]
        cipher: Option<PathBuf>,
        /// Public key to attack by baby-step giant-step (p < 2^26 only)
        #[arg(long = "pub", value_name = "P")]
        public: Option<PathBuf>,
        #[arg(long, value_name = "R.json")]
        report: PathBuf,
    },
}

/// Parses `args` (program name first) and runs the subcommand, returning the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn rng_for(seed: Option<u64>) -> RandomSource {
    match seed {
        Some(s) => {
            eprintln!("warning: --seed {s} makes every random draw reproducible; insecure, for testing only");
            seeded_rng(s)
        }
        None => entropy_rng(),
    }
}

fn execute(command: Command) -> Result<()> {
    match command {
        Command::Keygen {
            bits,
            out_pub,
            out_priv,
            seed,
        } => {
            let mut rng = rng_for(seed);
            let pair: keys::KeyPair<BigUint> = keys::generate_keypair(bits, &mut rng)?;
            if let Some(w) = pair.warning() {
                eprintln!("{w}");
            }
            keys::save_public(&out_pub, &pair.public)?;
            keys::save_private(&out_priv, &pair.private)?;
            eprintln!(
                "wrote {} and {} ({}-bit modulus)",
                out_pub.display(),
                out_priv.display(),
                pair.public.bits()
            );
        }
        Command::Encrypt {
            public,
            input,
            out,
            mode,
            seed,
        } => {
            let key = keys::load_public::<BigUint>(&public)?;
            if let Some(w) = key_size_warning(key.bits()) {
                eprintln!("{w}");
            }
            let img = imagecodec::load_image(&input)?;
            let mut rng = rng_for(seed);
            let c = cipher::encrypt_image(&img, &key, mode.into(), &mut rng)?;
            cipher::write_cipher(&out, &c)?;
            eprintln!(
                "encrypted {}x{}x{} samples in {:?} mode to {}",
                img.width(),
                img.height(),
                img.channels().count(),
                c.mode(),
                out.display()
            );
        }
        Command::Decrypt {
            private,
            input,
            out,
            allow_lossy,
        } => {
            let key = keys::load_private::<BigUint>(&private)?;
            let c = cipher::read_cipher::<BigUint>(&input)?;
            let img = cipher::decrypt_image(&c, &key)?;
            imagecodec::save_image(&img, &out, allow_lossy)?;
            eprintln!("decrypted to {}", out.display());
        }
        Command::Preview {
            input,
            out,
            allow_lossy,
        } => {
            let c = cipher::read_cipher::<BigUint>(&input)?;
            imagecodec::save_image(&cipher::cipher_preview(&c), &out, allow_lossy)?;
            eprintln!("preview (not decryptable) written to {}", out.display());
        }
        Command::Analyze {
            input,
            cipher: cipher_path,
            public,
            report,
        } => {
            let plain_img = imagecodec::load_image(&input)?;
            let recovery = match public {
                Some(path) => {
                    let key = keys::load_public::<BigUint>(&path)?;
                    let rec = analysis::recover_private_key(&key)?;
                    eprintln!(
                        "recovered secret exponent a = {} in {:.3} ms",
                        rec.private.a,
                        rec.elapsed.as_secs_f64() * 1e3
                    );
                    Some(rec)
                }
                None => None,
            };
            let (mut plain, mut cipher_report) = match cipher_path {
                Some(path) => {
                    let c = cipher::read_cipher::<BigUint>(&path)?;
                    let preview = cipher::cipher_preview(&c);
                    let (p, q) = analysis::compare_report::<f64>(&plain_img, &preview)?;
                    (p, Some(q))
                }
                None => (
                    AnalysisReport::from_image(&plain_img, PLAINTEXT_SOURCE),
                    None,
                ),
            };
            if let Some(rec) = &recovery {
                match cipher_report.take() {
                    Some(q) => cipher_report = Some(q.with_recovery(rec)),
                    None => plain = plain.with_recovery(rec),
                }
            }
            let json = analysis::report_json(&plain, cipher_report.as_ref());
            std::fs::write(&report, json + "\n").map_err(|e| crate::Error::io(&report, e))?;
            eprintln!("plaintext entropy {:.4} bits", mean(&plain.entropy_bits));
            if let Some(q) = &cipher_report {
                eprintln!("preview entropy {:.4} bits", mean(&q.entropy_bits));
            }
        }
    }
    Ok(())
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}
