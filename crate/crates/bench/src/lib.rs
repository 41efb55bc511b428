//! Fixed inputs shared by the benchmarks.

use meanlab_core::{SignedVector, ValueVector, Weighting};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A seeded `(w, x)` pair of length `n` with values spread over
/// `[10^-lo, 10^hi]`.
pub fn instance(n: usize, lo: f64, hi: f64, seed: u64) -> (Weighting, ValueVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.01..1.0)).collect();
    let x: Vec<f64> = (0..n).map(|_| 10f64.powf(rng.random_range(-lo..hi))).collect();
    (
        Weighting::normalize(raw).expect("positive weights"),
        ValueVector::new(x).expect("finite values"),
    )
}

pub fn signed(n: usize, seed: u64) -> SignedVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    SignedVector::new((0..n).map(|_| rng.random_range(-1e3..1e3)).collect()).expect("finite")
}
