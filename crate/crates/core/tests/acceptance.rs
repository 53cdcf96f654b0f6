//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Set `ELGAMAL_UPDATE_GOLDEN=1` to rewrite the seeded golden container.

mod common;

use std::time::{Duration, Instant};

use common::fixture;
use elgamal_image::analysis::{
    adjacent_correlation, recover_private_key, shannon_entropy, Direction,
};
use elgamal_image::cipher::{
    cipher_preview, decode_cipher, decrypt_image, decrypt_value, encode_cipher, encrypt_image,
    encrypt_value, read_cipher, write_cipher, ElementCipher,
};
use elgamal_image::imagecodec::load_image;
use elgamal_image::keys::{derive_public, generate_keypair, KeyPair, PrivateKey};
use elgamal_image::modmath::{
    euler_phi, factor_group_order, find_primitive_root, is_primitive_root, mod_exp, mod_inv,
};
use elgamal_image::{seeded_rng, BigUint, Channels, ImageMatrix, Mode};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn roundtrip_fidelity() -> Outcome {
    let pair: KeyPair<BigUint> = generate_keypair(64, &mut seeded_rng(64)).map_err(err)?;
    let mut rng = seeded_rng(65);
    let mut slowest = Duration::ZERO;
    for name in [
        "camera_gray_64.png",
        "coffee_rgb_64.png",
        "coffee_rgb_128.jpg",
    ] {
        let img = load_image(fixture(name)).map_err(err)?;
        for mode in [Mode::Paper, Mode::PerPixel] {
            let start = Instant::now();
            let c = encrypt_image(&img, &pair.public, mode, &mut rng).map_err(err)?;
            let enc = start.elapsed();
            let start = Instant::now();
            let back = decrypt_image(&c, &pair.private).map_err(err)?;
            let dec = start.elapsed();
            ensure!(back == img, "{name} {mode:?}: decrypted image differs");
            ensure!(
                enc < Duration::from_secs(10) && dec < Duration::from_secs(10),
                "{name} {mode:?}: encrypt {enc:?}, decrypt {dec:?}"
            );
            slowest = slowest.max(enc).max(dec);
        }
    }
    Ok(format!(
        "3 fixtures x 2 modes bit-identical, slowest direction {slowest:.2?}"
    ))
}

fn scalar_trace() -> Outcome {
    let private = PrivateKey::new(7u64, 3, 2).map_err(err)?;
    let public = derive_public(&private).map_err(err)?;
    ensure!(public.s == 2, "s = {}", public.s);
    let c = encrypt_value(&4, &public, &3).map_err(err)?;
    ensure!(
        c == ElementCipher { x: 6, y: 4 },
        "(x, y) = ({}, {})",
        c.x,
        c.y
    );
    let m = decrypt_value(&c, &private).map_err(err)?;
    ensure!(m == 4, "decrypted {m}");
    Ok("s=2, (x,y)=(6,4), decrypts to 4".into())
}

fn number_theory_oracles() -> Outcome {
    let primes: Vec<u64> = (3..2000u64)
        .filter(|&n| (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0))
        .collect();
    for &p in &primes {
        let f = factor_group_order(&p, 1 << 16).map_err(err)?;
        let r = find_primitive_root(&p, &f).map_err(err)?;
        let mut seen = vec![false; p as usize];
        let mut acc = 1u64;
        for _ in 0..p - 1 {
            acc = acc * r % p;
            seen[acc as usize] = true;
        }
        ensure!(
            seen[1..].iter().all(|&s| s),
            "p = {p}: powers of {r} miss a residue"
        );
    }

    let mut rng = seeded_rng(2000);
    for _ in 0..1000 {
        let modulus = rng.gen_range(2..1u64 << 31);
        let base = rng.gen_range(0..1u64 << 40);
        let exponent = rng.gen_range(0..4000u64);
        let mut naive = 1 % modulus;
        for _ in 0..exponent {
            naive = naive * (base % modulus) % modulus;
        }
        let got = mod_exp(&base, &exponent, &modulus).map_err(err)?;
        ensure!(
            got == naive,
            "{base}^{exponent} mod {modulus}: {got} != {naive}"
        );
    }
    let mut inverses = 0;
    for _ in 0..1000 {
        let modulus = rng.gen_range(2..20_000u64);
        let x = rng.gen_range(0..modulus);
        let naive = (1..modulus).find(|y| x * y % modulus == 1);
        match (mod_inv(&x, &modulus), naive) {
            (Ok(got), Some(want)) => {
                ensure!(got == want, "{x}^-1 mod {modulus}: {got} != {want}");
                inverses += 1;
            }
            (Err(_), None) => {}
            (got, want) => return Err(format!("{x}^-1 mod {modulus}: {got:?} vs {want:?}")),
        }
    }
    Ok(format!(
        "{} primes enumerated; 1000 mod_exp and 1000 mod_inv cases ({inverses} invertible) agree",
        primes.len()
    ))
}

fn phi_of_seven() -> Outcome {
    let f = factor_group_order(&7u64, 1 << 10).map_err(err)?;
    ensure!(
        is_primitive_root(&3, &7, &f).map_err(err)?,
        "3 rejected as a root mod 7"
    );
    let phi = euler_phi(&7u64).map_err(err)?;
    ensure!(phi == 6, "phi(7) = {phi}");
    Ok("is_primitive_root(3,7) = true, phi(7) = 6".into())
}

fn randomness_proxy() -> Outcome {
    let img = load_image(fixture("camera_gray_256.png")).map_err(err)?;
    ensure!(
        img.channels() == Channels::Gray && img.width() == 256,
        "unexpected fixture shape"
    );
    let plain_h: f64 = shannon_entropy(&img)[0];
    let plain_c: f64 = adjacent_correlation(&img, Direction::Horizontal).map_err(err)?[0];
    ensure!(
        plain_h < 7.5,
        "plaintext entropy {plain_h:.4} not below 7.5"
    );
    ensure!(
        plain_c > 0.8,
        "plaintext horizontal correlation {plain_c:.4} not above 0.8"
    );

    let pair: KeyPair<BigUint> = generate_keypair(64, &mut seeded_rng(5)).map_err(err)?;
    let c = encrypt_image(&img, &pair.public, Mode::PerPixel, &mut seeded_rng(6)).map_err(err)?;
    let preview = cipher_preview(&c);
    let h: f64 = shannon_entropy(&preview)[0];
    ensure!(h >= 7.9, "preview entropy {h:.4}");
    let mut corr = Vec::new();
    for d in Direction::ALL {
        let v: f64 = adjacent_correlation(&preview, d).map_err(err)?[0];
        ensure!(v.abs() <= 0.05, "{d:?} correlation {v:.4}");
        corr.push(format!("{v:+.4}"));
    }
    Ok(format!(
        "plain H={plain_h:.4} corr_h={plain_c:.4}; preview H={h:.4} corr h/v/d={}",
        corr.join("/")
    ))
}

fn paper_mode_leak() -> Outcome {
    let img = load_image(fixture("camera_gray_64.png")).map_err(err)?;
    let pair: KeyPair<BigUint> = generate_keypair(64, &mut seeded_rng(8)).map_err(err)?;
    let c = encrypt_image(&img, &pair.public, Mode::Paper, &mut seeded_rng(9)).map_err(err)?;
    let mut first = std::collections::HashMap::new();
    let mut equal_pairs = 0usize;
    for (m, y) in img.values().iter().zip(c.y_values()) {
        match first.get(m) {
            Some(prev) => {
                ensure!(prev == y, "pixel value {m} encrypted to two different y");
                equal_pairs += 1;
            }
            None => {
                first.insert(*m, y.clone());
            }
        }
    }
    ensure!(equal_pairs > 0, "fixture has no repeated pixel values");
    let distinct_y: std::collections::HashSet<_> = c.y_values().iter().collect();
    ensure!(
        distinct_y.len() == first.len(),
        "y values not in bijection with pixel values"
    );
    Ok(format!("{equal_pairs} repeated pixels share y exactly"))
}

fn dlp_demonstration() -> Outcome {
    let pair: KeyPair<BigUint> = generate_keypair(20, &mut seeded_rng(20)).map_err(err)?;
    ensure!(
        pair.public.p < BigUint::from(1u32 << 20),
        "p = {}",
        pair.public.p
    );
    let img = load_image(fixture("coffee_rgb_64.png")).map_err(err)?;
    let c = encrypt_image(&img, &pair.public, Mode::PerPixel, &mut seeded_rng(21)).map_err(err)?;
    let rec = recover_private_key(&pair.public).map_err(err)?;
    ensure!(
        rec.elapsed < Duration::from_secs(5),
        "recovery took {:?}",
        rec.elapsed
    );
    ensure!(
        rec.private.a == pair.private.a,
        "recovered a = {}",
        rec.private.a
    );
    let back = decrypt_image(&c, &rec.private).map_err(err)?;
    ensure!(back == img, "decryption with the recovered key differs");
    Ok(format!(
        "p = {}, a = {} recovered in {:.2?}",
        pair.public.p, rec.private.a, rec.elapsed
    ))
}

const GOLDEN: &str = "golden_seeded_rgb.eic";

fn seeded_golden() -> Result<Vec<u8>, String> {
    let pair: KeyPair<BigUint> = generate_keypair(32, &mut seeded_rng(2024)).map_err(err)?;
    let img = load_image(fixture("rgb_constants_3x2.png")).map_err(err)?;
    let c =
        encrypt_image(&img, &pair.public, Mode::PerPixel, &mut seeded_rng(2025)).map_err(err)?;
    Ok(encode_cipher(&c))
}

fn container_stability() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let pair: KeyPair<BigUint> = generate_keypair(40, &mut seeded_rng(40)).map_err(err)?;
    let mut count = 0;
    for name in [
        "camera_gray_256.png",
        "camera_gray_64.png",
        "coffee_rgb_64.png",
        "coffee_rgb_128.jpg",
        "gray_2x2.png",
        "rgb_constants_3x2.png",
    ] {
        let img = load_image(fixture(name)).map_err(err)?;
        for mode in [Mode::Paper, Mode::PerPixel] {
            let c = encrypt_image(&img, &pair.public, mode, &mut seeded_rng(41)).map_err(err)?;
            let path = dir.path().join("c.eic");
            write_cipher(&path, &c).map_err(err)?;
            let back = read_cipher::<BigUint>(&path).map_err(err)?;
            ensure!(back == c, "{name} {mode:?}: container roundtrip differs");
            count += 1;
        }
    }

    let bytes = seeded_golden()?;
    if std::env::var_os("ELGAMAL_UPDATE_GOLDEN").is_some() {
        std::fs::write(fixture(GOLDEN), &bytes).map_err(err)?;
    }
    let golden = std::fs::read(fixture(GOLDEN)).map_err(|e| format!("{GOLDEN}: {e}"))?;
    ensure!(bytes == golden, "seeded container differs from {GOLDEN}");
    ensure!(seeded_golden()? == golden, "second seeded run differs");
    let decoded = decode_cipher::<BigUint>(&golden).map_err(err)?;
    ensure!(
        encode_cipher(&decoded) == golden,
        "golden does not re-encode identically"
    );
    let img = ImageMatrix::new(3, 2, Channels::Rgb, [[10u8; 6], [20; 6], [30; 6]].concat())
        .map_err(err)?;
    let pair: KeyPair<BigUint> = generate_keypair(32, &mut seeded_rng(2024)).map_err(err)?;
    ensure!(
        decrypt_image(&decoded, &pair.private).map_err(err)? == img,
        "golden decrypts wrongly"
    );
    Ok(format!(
        "{count} fixture containers roundtrip; {GOLDEN} ({} bytes) matches",
        golden.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("roundtrip fidelity", roundtrip_fidelity),
        ("scalar known-answer trace", scalar_trace),
        ("number-theory oracle equivalence", number_theory_oracles),
        ("primitive root and phi of 7", phi_of_seven),
        ("ciphertext randomness proxy", randomness_proxy),
        ("paper-mode leakage witness", paper_mode_leak),
        ("discrete-log key recovery", dlp_demonstration),
        ("container stability", container_stability),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
