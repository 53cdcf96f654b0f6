use num_traits::Float;

use crate::error::{Error, Result};
use crate::imagecodec::ImageMatrix;

/// Neighbor offset for adjacent-pixel correlation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `(row, col)` against `(row, col + 1)`.
    Horizontal,
    /// `(row, col)` against `(row + 1, col)`.
    Vertical,
    /// `(row, col)` against `(row + 1, col + 1)`.
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [
        Direction::Horizontal,
        Direction::Vertical,
        Direction::Diagonal,
    ];

    fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
            Direction::Diagonal => (1, 1),
        }
    }
}

/// Per-channel counts of each sample value.
pub fn histogram(m: &ImageMatrix) -> Vec<[u64; 256]> {
    (0..m.channels().count())
        .map(|c| {
            let mut counts = [0u64; 256];
            for &v in m.plane(c) {
                counts[v as usize] += 1;
            }
            counts
        })
        .collect()
}

fn cast<F: Float>(v: f64) -> F {
    F::from(v).expect("finite value converts")
}

/// `-Σ f log2 f` over the nonzero relative frequencies of `counts`.
pub fn entropy_of_counts<F: Float>(counts: &[u64]) -> F {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return F::zero();
    }
    let total = cast::<F>(total as f64);
    counts
        .iter()
        .filter(|c| **c > 0)
        .map(|&c| {
            let f = cast::<F>(c as f64) / total;
            -f * f.log2()
        })
        .fold(F::zero(), |a, b| a + b)
}

/// Shannon entropy in bits of each channel's value distribution.
pub fn shannon_entropy<F: Float>(m: &ImageMatrix) -> Vec<F> {
    histogram(m).iter().map(|h| entropy_of_counts(h)).collect()
}

/// Pearson correlation of each channel against itself shifted one pixel in `direction`.
/// Zero variance on either side yields 0.
pub fn adjacent_correlation<F: Float>(m: &ImageMatrix, direction: Direction) -> Result<Vec<F>> {
    let (dr, dc) = direction.offset();
    let (w, h) = (m.width() as usize, m.height() as usize);
    if w <= dc || h <= dr {
        return Err(Error::InsufficientData(format!(
            "{w}x{h} image has no {direction:?} neighbor pairs"
        )));
    }
    let pairs = (h - dr) * (w - dc);
    let n = cast::<F>(pairs as f64);

    let per_channel = (0..m.channels().count())
        .map(|c| {
            let plane = m.plane(c);
            let pair_iter = || {
                (0..h - dr).flat_map(move |row| {
                    (0..w - dc)
                        .map(move |col| (plane[row * w + col], plane[(row + dr) * w + col + dc]))
                })
            };
            let (sx, sy) =
                pair_iter().fold((0u64, 0u64), |(a, b), (x, y)| (a + x as u64, b + y as u64));
            let mx = cast::<F>(sx as f64) / n;
            let my = cast::<F>(sy as f64) / n;
            let (mut cov, mut vx, mut vy) = (F::zero(), F::zero(), F::zero());
            for (x, y) in pair_iter() {
                let dx = cast::<F>(x as f64) - mx;
                let dy = cast::<F>(y as f64) - my;
                cov = cov + dx * dy;
                vx = vx + dx * dx;
                vy = vy + dy * dy;
            }
            if vx == F::zero() || vy == F::zero() {
                return F::zero();
            }
            let rho = cov / (vx.sqrt() * vy.sqrt());
            rho.max(-F::one()).min(F::one())
        })
        .collect();
    Ok(per_channel)
}
