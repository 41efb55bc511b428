//! Maps between finite index sets and the weight/value calculus they induce.

use num_traits::{CheckedAdd, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MeanError, Result};
use crate::vectors::{Rational, SignedVector, ValueVector, Weighting};

/// A map `f: {0..n} → {0..m}` stored as its list of images (0-based).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawIndexMap", into = "RawIndexMap")]
pub struct IndexMap {
    codomain_size: usize,
    images: Vec<usize>,
    injective: bool,
    surjective: bool,
}

#[derive(Serialize, Deserialize)]
struct RawIndexMap {
    codomain_size: usize,
    images: Vec<usize>,
}

impl TryFrom<RawIndexMap> for IndexMap {
    type Error = MeanError;

    fn try_from(raw: RawIndexMap) -> Result<Self> {
        IndexMap::new(raw.images, raw.codomain_size)
    }
}

impl From<IndexMap> for RawIndexMap {
    fn from(f: IndexMap) -> Self {
        RawIndexMap {
            codomain_size: f.codomain_size,
            images: f.images,
        }
    }
}

impl IndexMap {
    pub fn new(images: Vec<usize>, codomain_size: usize) -> Result<Self> {
        if let Some((i, &j)) = images.iter().enumerate().find(|(_, &j)| j >= codomain_size) {
            return Err(MeanError::InvalidMap(format!(
                "image of {i} is {j}, outside codomain of size {codomain_size}"
            )));
        }
        let mut hits = vec![0usize; codomain_size];
        for &j in &images {
            hits[j] += 1;
        }
        let injective = hits.iter().all(|&h| h <= 1);
        let surjective = hits.iter().all(|&h| h >= 1);
        Ok(IndexMap {
            codomain_size,
            images,
            injective,
            surjective,
        })
    }

    pub fn identity(n: usize) -> Self {
        IndexMap {
            codomain_size: n,
            images: (0..n).collect(),
            injective: true,
            surjective: true,
        }
    }

    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_injective(&self) -> bool {
        self.injective
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn is_bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// `(fw)_j = Σ_{i ∈ f⁻¹(j)} w_i`.
pub fn pushforward(f: &IndexMap, w: &Weighting) -> Result<Weighting> {
    if w.len() != f.domain_size() {
        return Err(MeanError::LengthMismatch {
            expected: f.domain_size(),
            found: w.len(),
        });
    }
    let mut entries = vec![0.0; f.codomain_size];
    for (&j, &wi) in f.images.iter().zip(w.entries()) {
        entries[j] += wi;
    }
    let exact = w.exact().and_then(|ex| {
        let mut acc = vec![Rational::zero(); f.codomain_size];
        for (&j, r) in f.images.iter().zip(ex) {
            acc[j] = acc[j].checked_add(r)?;
        }
        Some(acc)
    });
    Ok(Weighting::from_parts(entries, exact))
}

/// `(xf)_i = x_{f(i)}`.
pub fn pullback(f: &IndexMap, x: &ValueVector) -> Result<ValueVector> {
    if x.len() != f.codomain_size {
        return Err(MeanError::LengthMismatch {
            expected: f.codomain_size,
            found: x.len(),
        });
    }
    ValueVector::new(f.images.iter().map(|&j| x.entries()[j]).collect())
}

/// Zero-padding along an injection: `(fx)_{f(i)} = x_i`, zero off the image.
pub fn embed(f: &IndexMap, x: &SignedVector) -> Result<SignedVector> {
    if !f.injective {
        return Err(MeanError::InvalidMap("embed requires an injective map".into()));
    }
    if x.len() != f.domain_size() {
        return Err(MeanError::LengthMismatch {
            expected: f.domain_size(),
            found: x.len(),
        });
    }
    let mut out = vec![0.0; f.codomain_size];
    for (&j, &xi) in f.images.iter().zip(x.entries()) {
        out[j] = xi;
    }
    SignedVector::new(out)
}
