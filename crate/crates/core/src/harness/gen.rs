//! Seeded generators for harness trials.
//!
//! Every trial owns an RNG derived from `(seed, stream, trial)`, so serial
//! and parallel runs draw identical inputs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::vectors::compensated_sum;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable 64-bit tag for a stream name (FNV-1a).
pub(crate) fn stream_tag(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}

pub fn trial_rng(seed: u64, stream: &str, trial: u64) -> ChaCha8Rng {
    let s = splitmix64(seed ^ splitmix64(stream_tag(stream) ^ splitmix64(trial)));
    ChaCha8Rng::seed_from_u64(s)
}

pub fn size<R: Rng>(rng: &mut R, min: usize, max: usize) -> usize {
    rng.random_range(min..=max.max(min))
}

fn exponential<R: Rng>(rng: &mut R) -> f64 {
    // u ∈ (0, 1) so the draw is strictly positive
    let u: f64 = rng.random_range(f64::EPSILON..1.0);
    -u.ln()
}

/// Normalized i.i.d. exponentials (flat Dirichlet), with occasional point
/// masses and exact zeros unless `positive` is set.
pub fn weights<R: Rng>(rng: &mut R, n: usize, positive: bool) -> Vec<f64> {
    let roll: f64 = rng.random();
    if !positive && n > 1 && roll < 0.1 {
        let mut w = vec![0.0; n];
        w[rng.random_range(0..n)] = 1.0;
        return w;
    }
    let mut raw: Vec<f64> = (0..n).map(|_| exponential(rng)).collect();
    if !positive && n > 1 && roll < 0.3 {
        let zeros = rng.random_range(1..n);
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        for &i in &idx[..zeros] {
            raw[i] = 0.0;
        }
    }
    normalize(raw)
}

/// Strictly positive weights bounded below by `1/(2n)`.
pub fn spread_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let d = weights(rng, n, true);
    normalize(d.iter().map(|v| 0.5 * v + 0.5 / n as f64).collect())
}

pub(crate) fn normalize(raw: Vec<f64>) -> Vec<f64> {
    let s = compensated_sum(raw.iter().copied());
    raw.into_iter().map(|v| v / s).collect()
}

/// Log-uniform on `[1e-6, 1e6]`, with exact zeros at rate 0.1.
pub fn value<R: Rng>(rng: &mut R) -> f64 {
    if rng.random::<f64>() < 0.1 {
        0.0
    } else {
        10f64.powf(rng.random_range(-6.0..6.0))
    }
}

pub fn values<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| value(rng)).collect()
}

pub fn permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    Bijection,
    Surjection,
    Injection,
    General,
}

/// A random map together with its `(domain, codomain)` sizes.
pub fn index_map<R: Rng>(rng: &mut R, max_n: usize, kind: MapKind) -> (Vec<usize>, usize) {
    match kind {
        MapKind::Bijection => {
            let n = size(rng, 1, max_n);
            (permutation(rng, n), n)
        }
        MapKind::Surjection => {
            let m = size(rng, 1, max_n);
            let n = size(rng, m, max_n);
            let mut images: Vec<usize> = (0..m).collect();
            images.extend((m..n).map(|_| rng.random_range(0..m)));
            images.shuffle(rng);
            (images, m)
        }
        MapKind::Injection => {
            let m = size(rng, 1, max_n);
            let n = size(rng, 1, m);
            let mut pool: Vec<usize> = (0..m).collect();
            pool.shuffle(rng);
            pool.truncate(n);
            (pool, m)
        }
        MapKind::General => {
            let n = size(rng, 1, max_n);
            let m = size(rng, 1, max_n);
            ((0..n).map(|_| rng.random_range(0..m)).collect(), m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<f64> = values(&mut trial_rng(7, "x", 3), 5);
        let b: Vec<f64> = values(&mut trial_rng(7, "x", 3), 5);
        let c: Vec<f64> = values(&mut trial_rng(7, "x", 4), 5);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn weights_are_probability_vectors() {
        let mut rng = trial_rng(1, "w", 0);
        for n in 1..10 {
            for positive in [false, true] {
                let w = weights(&mut rng, n, positive);
                assert_eq!(w.len(), n);
                assert!((compensated_sum(w.iter().copied()) - 1.0).abs() < 1e-14);
                if positive {
                    assert!(w.iter().all(|&v| v > 0.0));
                }
            }
            let s = spread_weights(&mut rng, n);
            assert!(s.iter().all(|&v| v >= 0.5 / n as f64 * 0.999));
        }
    }

    #[test]
    fn map_kinds() {
        let mut rng = trial_rng(3, "maps", 0);
        for _ in 0..200 {
            let (img, m) = index_map(&mut rng, 6, MapKind::Surjection);
            assert!((0..m).all(|j| img.contains(&j)));
            let (img, m) = index_map(&mut rng, 6, MapKind::Injection);
            let mut s = img.clone();
            s.sort();
            s.dedup();
            assert_eq!(s.len(), img.len());
            assert!(img.iter().all(|&j| j < m));
            let (img, m) = index_map(&mut rng, 6, MapKind::Bijection);
            assert_eq!(img.len(), m);
        }
    }
}
