//! The individual property checks.

use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::gen::{self, MapKind};
use super::shrink::{
    drop_weight, nonsimple, remove_from_permutation, value_snaps, weight_snaps, without, Bundle,
};
use super::{CheckConfig, PropertyKind};
use crate::error::Result;
use crate::index_map::{pullback, pushforward, IndexMap};
use crate::system::MeanSystem;
use crate::vectors::{tensor_values, tensor_weights, ValueVector, Weighting};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    /// `lhs = rhs` up to `rel_tol`.
    Equal,
    /// `lhs ≤ rhs` up to `slack`.
    AtMost,
}

pub(crate) struct Meta {
    pub name: &'static str,
    pub kind: PropertyKind,
    pub implied_by_axioms: bool,
    pub relation: Relation,
}

pub(crate) trait Case: Sized + Clone + Send + Sync {
    const META: Meta;

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, trial: u64) -> Self;

    /// `(lhs, rhs)` of the property at this input.
    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)>;

    fn candidates(&self) -> Vec<Self>;

    /// `(size, non-simple entries)`; shrinking must decrease it.
    fn complexity(&self) -> (usize, usize);

    fn weight_vectors(&self) -> Vec<&[f64]>;

    fn valid(&self, cfg: &CheckConfig) -> bool {
        !cfg.positive_weights_only
            || self
                .weight_vectors()
                .iter()
                .all(|w| w.iter().all(|v| *v > 0.0))
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value);

    fn from_witness(w: &[f64], x: &[f64], aux: &Value) -> Option<Self>;
}

fn wt(v: &[f64]) -> Result<Weighting> {
    Weighting::new(v.to_vec())
}

fn vals(v: &[f64]) -> Result<ValueVector> {
    ValueVector::new(v.to_vec())
}

fn aux_vec(aux: &Value, key: &str) -> Option<Vec<f64>> {
    aux.get(key)?
        .as_array()?
        .iter()
        .map(|v| v.as_f64())
        .collect()
}

fn aux_f64(aux: &Value, key: &str) -> Option<f64> {
    aux.get(key)?.as_f64()
}

fn bundle_from(w: &[f64], cols: Vec<Vec<f64>>) -> Option<Bundle> {
    if w.is_empty() || cols.iter().any(|c| c.len() != w.len()) {
        return None;
    }
    Some(Bundle { w: w.to_vec(), cols })
}

fn random_bundle(rng: &mut ChaCha8Rng, cfg: &CheckConfig, min_n: usize, cols: usize) -> Bundle {
    let n = gen::size(rng, min_n, cfg.max_n);
    let w = gen::weights(rng, n, cfg.positive_weights_only);
    let cols = (0..cols).map(|_| gen::values(rng, n)).collect();
    Bundle { w, cols }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct Functoriality {
    images: Vec<usize>,
    codomain: usize,
    w: Vec<f64>,
    x: Vec<f64>,
}

impl Case for Functoriality {
    const META: Meta = Meta {
        name: "functoriality",
        kind: PropertyKind::Axiom,
        implied_by_axioms: false,
        relation: Relation::Equal,
    };

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, _trial: u64) -> Self {
        let kinds: &[MapKind] = if cfg.positive_weights_only {
            &[MapKind::Bijection, MapKind::Surjection]
        } else {
            &[MapKind::Bijection, MapKind::Surjection, MapKind::Injection, MapKind::General]
        };
        let kind = *kinds.choose(rng).expect("nonempty");
        let (images, codomain) = gen::index_map(rng, cfg.max_n, kind);
        let w = gen::weights(rng, images.len(), cfg.positive_weights_only);
        let x = gen::values(rng, codomain);
        Functoriality { images, codomain, w, x }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        let f = IndexMap::new(self.images.clone(), self.codomain)?;
        let w = wt(&self.w)?;
        let x = vals(&self.x)?;
        let lhs = m.evaluate(&pushforward(&f, &w)?, &x)?;
        let rhs = m.evaluate(&w, &pullback(&f, &x)?)?;
        Ok((lhs, rhs))
    }

    fn candidates(&self) -> Vec<Self> {
        let n = self.images.len();
        let mut out = Vec::new();
        for i in 0..n.saturating_sub(1) {
            let mut w = without(&self.w, i + 1);
            w[i] += self.w[i + 1];
            let mut images = self.images.clone();
            images.remove(i + 1);
            out.push(Functoriality { images, w, ..self.clone() });
        }
        for i in 0..n {
            if let Some(w) = drop_weight(&self.w, i) {
                let mut images = self.images.clone();
                images.remove(i);
                out.push(Functoriality { images, w, ..self.clone() });
            }
        }
        if self.codomain > 1 {
            for j in 0..self.codomain {
                if self.images.contains(&j) {
                    continue;
                }
                let images = self.images.iter().map(|&k| if k > j { k - 1 } else { k }).collect();
                out.push(Functoriality {
                    images,
                    codomain: self.codomain - 1,
                    x: without(&self.x, j),
                    w: self.w.clone(),
                });
            }
        }
        for w in weight_snaps(&self.w) {
            out.push(Functoriality { w, ..self.clone() });
        }
        for (i, t) in value_snaps(&self.x) {
            let mut c = self.clone();
            c.x[i] = t;
            out.push(c);
        }
        out
    }

    fn complexity(&self) -> (usize, usize) {
        (self.w.len() + self.x.len(), nonsimple(&self.w) + nonsimple(&self.x))
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![&self.w]
    }

    fn valid(&self, cfg: &CheckConfig) -> bool {
        if !cfg.positive_weights_only {
            return true;
        }
        self.w.iter().all(|v| *v > 0.0) && (0..self.codomain).all(|j| self.images.contains(&j))
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (
            self.w.clone(),
            self.x.clone(),
            json!({ "images": self.images, "codomain_size": self.codomain }),
        )
    }

    fn from_witness(w: &[f64], x: &[f64], aux: &Value) -> Option<Self> {
        let images = aux
            .get("images")?
            .as_array()?
            .iter()
            .map(|v| v.as_u64().map(|u| u as usize))
            .collect::<Option<Vec<_>>>()?;
        let codomain = aux.get("codomain_size")?.as_u64()? as usize;
        (images.len() == w.len() && x.len() == codomain).then(|| Functoriality {
            images,
            codomain,
            w: w.to_vec(),
            x: x.to_vec(),
        })
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct Consistency {
    c: f64,
}

impl Case for Consistency {
    const META: Meta = Meta {
        name: "consistency",
        kind: PropertyKind::Axiom,
        implied_by_axioms: false,
        relation: Relation::Equal,
    };

    fn generate(rng: &mut ChaCha8Rng, _cfg: &CheckConfig, trial: u64) -> Self {
        let c = match trial {
            0 => 0.0,
            1 => 1.0,
            _ => rng.random_range(0.0..=1e6),
        };
        Consistency { c }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        Ok((m.evaluate(&wt(&[1.0])?, &vals(&[self.c])?)?, self.c))
    }

    fn candidates(&self) -> Vec<Self> {
        value_snaps(&[self.c])
            .into_iter()
            .map(|(_, t)| Consistency { c: t })
            .collect()
    }

    fn complexity(&self) -> (usize, usize) {
        (1, nonsimple(&[self.c]))
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![]
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (vec![1.0], vec![self.c], json!({}))
    }

    fn from_witness(_w: &[f64], x: &[f64], _aux: &Value) -> Option<Self> {
        (x.len() == 1).then(|| Consistency { c: x[0] })
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct Monotonicity {
    b: Bundle,
}

impl Case for Monotonicity {
    const META: Meta = Meta {
        name: "monotonicity",
        kind: PropertyKind::Axiom,
        implied_by_axioms: false,
        relation: Relation::AtMost,
    };

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, _trial: u64) -> Self {
        let mut b = random_bundle(rng, cfg, 1, 1);
        let y = b.cols[0]
            .iter()
            .map(|&x| {
                if rng.random::<f64>() < 0.3 {
                    x
                } else {
                    x + gen::value(rng)
                }
            })
            .collect();
        b.cols.push(y);
        Monotonicity { b }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        let w = wt(&self.b.w)?;
        Ok((
            m.evaluate(&w, &vals(&self.b.cols[0])?)?,
            m.evaluate(&w, &vals(&self.b.cols[1])?)?,
        ))
    }

    fn candidates(&self) -> Vec<Self> {
        self.b.shrinks().into_iter().map(|(b, _)| Monotonicity { b }).collect()
    }

    fn complexity(&self) -> (usize, usize) {
        (self.b.size(), self.b.nonsimple())
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![&self.b.w]
    }

    fn valid(&self, cfg: &CheckConfig) -> bool {
        let ordered = self.b.cols[0].iter().zip(&self.b.cols[1]).all(|(x, y)| x <= y);
        ordered && (!cfg.positive_weights_only || self.b.w.iter().all(|v| *v > 0.0))
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (self.b.w.clone(), self.b.cols[0].clone(), json!({ "y": self.b.cols[1] }))
    }

    fn from_witness(w: &[f64], x: &[f64], aux: &Value) -> Option<Self> {
        Some(Monotonicity {
            b: bundle_from(w, vec![x.to_vec(), aux_vec(aux, "y")?])?,
        })
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct Convexity {
    b: Bundle,
}

impl Case for Convexity {
    const META: Meta = Meta {
        name: "convexity",
        kind: PropertyKind::Structure,
        implied_by_axioms: false,
        relation: Relation::AtMost,
    };

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, trial: u64) -> Self {
        if trial == 0 {
            // w = (1/2, 1/2), x = (1, 0), y = (0, 1): breaks every M_p with p < 1
            return Convexity {
                b: Bundle {
                    w: vec![0.5, 0.5],
                    cols: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
                },
            };
        }
        Convexity {
            b: random_bundle(rng, cfg, 1, 2),
        }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        let w = wt(&self.b.w)?;
        let (x, y) = (&self.b.cols[0], &self.b.cols[1]);
        let mid: Vec<f64> = x.iter().zip(y).map(|(a, b)| 0.5 * a + 0.5 * b).collect();
        let lhs = m.evaluate(&w, &vals(&mid)?)?;
        let rhs = m.evaluate(&w, &vals(x)?)?.max(m.evaluate(&w, &vals(y)?)?);
        Ok((lhs, rhs))
    }

    fn candidates(&self) -> Vec<Self> {
        self.b.shrinks().into_iter().map(|(b, _)| Convexity { b }).collect()
    }

    fn complexity(&self) -> (usize, usize) {
        (self.b.size(), self.b.nonsimple())
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![&self.b.w]
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (self.b.w.clone(), self.b.cols[0].clone(), json!({ "y": self.b.cols[1] }))
    }

    fn from_witness(w: &[f64], x: &[f64], aux: &Value) -> Option<Self> {
        Some(Convexity {
            b: bundle_from(w, vec![x.to_vec(), aux_vec(aux, "y")?])?,
        })
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct Multiplicativity {
    a: Bundle,
    b: Bundle,
}

impl Case for Multiplicativity {
    const META: Meta = Meta {
        name: "multiplicativity",
        kind: PropertyKind::Structure,
        implied_by_axioms: false,
        relation: Relation::Equal,
    };

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, _trial: u64) -> Self {
        let a = random_bundle(rng, cfg, 1, 1);
        let b = random_bundle(rng, cfg, 1, 1);
        Multiplicativity { a, b }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        let (w, x) = (wt(&self.a.w)?, vals(&self.a.cols[0])?);
        let (v, y) = (wt(&self.b.w)?, vals(&self.b.cols[0])?);
        let lhs = m.evaluate(&tensor_weights(&w, &v), &tensor_values(&x, &y)?)?;
        let rhs = m.evaluate(&w, &x)? * m.evaluate(&v, &y)?;
        Ok((lhs, rhs))
    }

    fn candidates(&self) -> Vec<Self> {
        let mut out: Vec<Self> = self
            .a
            .shrinks()
            .into_iter()
            .map(|(a, _)| Multiplicativity { a, b: self.b.clone() })
            .collect();
        out.extend(
            self.b
                .shrinks()
                .into_iter()
                .map(|(b, _)| Multiplicativity { a: self.a.clone(), b }),
        );
        out
    }

    fn complexity(&self) -> (usize, usize) {
        (self.a.size() + self.b.size(), self.a.nonsimple() + self.b.nonsimple())
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![&self.a.w, &self.b.w]
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (
            self.a.w.clone(),
            self.a.cols[0].clone(),
            json!({ "v": self.b.w, "y": self.b.cols[0] }),
        )
    }

    fn from_witness(w: &[f64], x: &[f64], aux: &Value) -> Option<Self> {
        let v = aux_vec(aux, "v")?;
        Some(Multiplicativity {
            a: bundle_from(w, vec![x.to_vec()])?,
            b: bundle_from(&v, vec![aux_vec(aux, "y")?])?,
        })
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct Symmetry {
    b: Bundle,
    perm: Vec<usize>,
}

impl Case for Symmetry {
    const META: Meta = Meta {
        name: "symmetry",
        kind: PropertyKind::Derived,
        implied_by_axioms: true,
        relation: Relation::Equal,
    };

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, _trial: u64) -> Self {
        let b = random_bundle(rng, cfg, 1, 1);
        let perm = gen::permutation(rng, b.n());
        Symmetry { b, perm }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        let x = &self.b.cols[0];
        let pw: Vec<f64> = self.perm.iter().map(|&k| self.b.w[k]).collect();
        let px: Vec<f64> = self.perm.iter().map(|&k| x[k]).collect();
        Ok((
            m.evaluate(&wt(&self.b.w)?, &vals(x)?)?,
            m.evaluate(&wt(&pw)?, &vals(&px)?)?,
        ))
    }

    fn candidates(&self) -> Vec<Self> {
        self.b
            .shrinks()
            .into_iter()
            .map(|(b, removed)| Symmetry {
                perm: remove_from_permutation(&self.perm, &removed),
                b,
            })
            .collect()
    }

    fn complexity(&self) -> (usize, usize) {
        (self.b.size(), self.b.nonsimple())
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![&self.b.w]
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (self.b.w.clone(), self.b.cols[0].clone(), json!({ "permutation": self.perm }))
    }

    fn from_witness(w: &[f64], x: &[f64], aux: &Value) -> Option<Self> {
        let perm = aux
            .get("permutation")?
            .as_array()?
            .iter()
            .map(|v| v.as_u64().map(|u| u as usize))
            .collect::<Option<Vec<_>>>()?;
        let mut sorted = perm.clone();
        sorted.sort_unstable();
        (sorted == (0..w.len()).collect::<Vec<_>>()).then_some(())?;
        Some(Symmetry {
            b: bundle_from(w, vec![x.to_vec()])?,
            perm,
        })
    }
}

// ---------------------------------------------------------------------------

/// `w` has `n + 1` entries, `x` has `n`; the last value is repeated.
#[derive(Debug, Clone)]
pub(crate) struct Repetition {
    w: Vec<f64>,
    x: Vec<f64>,
}

impl Case for Repetition {
    const META: Meta = Meta {
        name: "repetition",
        kind: PropertyKind::Derived,
        implied_by_axioms: true,
        relation: Relation::Equal,
    };

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, _trial: u64) -> Self {
        let n = gen::size(rng, 1, cfg.max_n);
        let w = gen::weights(rng, n + 1, cfg.positive_weights_only);
        let x = gen::values(rng, n);
        Repetition { w, x }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        let n = self.x.len();
        let mut repeated = self.x.clone();
        repeated.push(self.x[n - 1]);
        let mut merged = self.w[..n].to_vec();
        merged[n - 1] += self.w[n];
        Ok((
            m.evaluate(&wt(&self.w)?, &vals(&repeated)?)?,
            m.evaluate(&wt(&merged)?, &vals(&self.x)?)?,
        ))
    }

    fn candidates(&self) -> Vec<Self> {
        let n = self.x.len();
        let mut out = Vec::new();
        for i in 0..n.saturating_sub(1) {
            if let Some(w) = drop_weight(&self.w, i) {
                out.push(Repetition { w, x: without(&self.x, i) });
            }
        }
        for w in weight_snaps(&self.w) {
            out.push(Repetition { w, x: self.x.clone() });
        }
        for (i, t) in value_snaps(&self.x) {
            let mut c = self.clone();
            c.x[i] = t;
            out.push(c);
        }
        out
    }

    fn complexity(&self) -> (usize, usize) {
        (self.w.len() + self.x.len(), nonsimple(&self.w) + nonsimple(&self.x))
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![&self.w]
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (self.w.clone(), self.x.clone(), json!({}))
    }

    fn from_witness(w: &[f64], x: &[f64], _aux: &Value) -> Option<Self> {
        (!x.is_empty() && w.len() == x.len() + 1).then(|| Repetition {
            w: w.to_vec(),
            x: x.to_vec(),
        })
    }
}

// ---------------------------------------------------------------------------

/// `w` has `n` entries, `x` has `n + 1`; the extra value gets weight 0.
#[derive(Debug, Clone)]
pub(crate) struct ZeroWeight {
    w: Vec<f64>,
    x: Vec<f64>,
}

impl Case for ZeroWeight {
    const META: Meta = Meta {
        name: "zero_weight",
        kind: PropertyKind::Derived,
        implied_by_axioms: true,
        relation: Relation::Equal,
    };

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, _trial: u64) -> Self {
        let n = gen::size(rng, 1, cfg.max_n);
        let w = gen::weights(rng, n, cfg.positive_weights_only);
        let x = gen::values(rng, n + 1);
        ZeroWeight { w, x }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        let n = self.w.len();
        let mut padded = self.w.clone();
        padded.push(0.0);
        Ok((
            m.evaluate(&wt(&padded)?, &vals(&self.x)?)?,
            m.evaluate(&wt(&self.w)?, &vals(&self.x[..n])?)?,
        ))
    }

    fn candidates(&self) -> Vec<Self> {
        let n = self.w.len();
        let mut out = Vec::new();
        for i in 0..n {
            if let Some(w) = drop_weight(&self.w, i) {
                out.push(ZeroWeight { w, x: without(&self.x, i) });
            }
        }
        for w in weight_snaps(&self.w) {
            out.push(ZeroWeight { w, x: self.x.clone() });
        }
        for (i, t) in value_snaps(&self.x) {
            let mut c = self.clone();
            c.x[i] = t;
            out.push(c);
        }
        out
    }

    fn complexity(&self) -> (usize, usize) {
        (self.w.len() + self.x.len(), nonsimple(&self.w) + nonsimple(&self.x))
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![&self.w]
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (self.w.clone(), self.x.clone(), json!({}))
    }

    fn from_witness(w: &[f64], x: &[f64], _aux: &Value) -> Option<Self> {
        (!w.is_empty() && x.len() == w.len() + 1).then(|| ZeroWeight {
            w: w.to_vec(),
            x: x.to_vec(),
        })
    }
}

// ---------------------------------------------------------------------------

/// Moves `eps` of weight from the last coordinate to the one before it,
/// whose value is at least as large.
#[derive(Debug, Clone)]
pub(crate) struct Transfer {
    b: Bundle,
    eps: f64,
}

impl Transfer {
    fn moved(&self) -> Vec<f64> {
        let n = self.b.n();
        let mut w = self.b.w.clone();
        w[n - 2] += self.eps;
        w[n - 1] = (w[n - 1] - self.eps).max(0.0);
        w
    }
}

impl Case for Transfer {
    const META: Meta = Meta {
        name: "transfer",
        kind: PropertyKind::Derived,
        implied_by_axioms: true,
        relation: Relation::AtMost,
    };

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, _trial: u64) -> Self {
        let mut b = random_bundle(rng, cfg, 2, 1);
        let n = b.n();
        if b.cols[0][n - 1] > b.cols[0][n - 2] {
            b.cols[0].swap(n - 1, n - 2);
        }
        let last = b.w[n - 1];
        let roll: f64 = rng.random();
        let eps = if roll < 0.15 || last == 0.0 {
            0.0
        } else if roll < 0.3 && !cfg.positive_weights_only {
            last
        } else {
            rng.random_range(0.0..last)
        };
        Transfer { b, eps }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        let x = vals(&self.b.cols[0])?;
        Ok((
            m.evaluate(&wt(&self.b.w)?, &x)?,
            m.evaluate(&wt(&self.moved())?, &x)?,
        ))
    }

    fn candidates(&self) -> Vec<Self> {
        let mut out: Vec<Self> = self
            .b
            .shrinks()
            .into_iter()
            .map(|(b, _)| Transfer { b, eps: self.eps })
            .collect();
        for eps in [0.0, 0.5, 1.0] {
            if eps != self.eps && eps <= self.b.w[self.b.n() - 1] {
                out.push(Transfer { b: self.b.clone(), eps });
            }
        }
        out
    }

    fn complexity(&self) -> (usize, usize) {
        (self.b.size(), self.b.nonsimple() + nonsimple(&[self.eps]))
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![&self.b.w]
    }

    fn valid(&self, cfg: &CheckConfig) -> bool {
        let n = self.b.n();
        if n < 2 {
            return false;
        }
        let x = &self.b.cols[0];
        let ok = x[n - 1] <= x[n - 2] && self.eps >= 0.0 && self.eps <= self.b.w[n - 1];
        ok && (!cfg.positive_weights_only
            || (self.b.w.iter().all(|v| *v > 0.0) && self.moved().iter().all(|v| *v > 0.0)))
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (self.b.w.clone(), self.b.cols[0].clone(), json!({ "epsilon": self.eps }))
    }

    fn from_witness(w: &[f64], x: &[f64], aux: &Value) -> Option<Self> {
        Some(Transfer {
            b: bundle_from(w, vec![x.to_vec()])?,
            eps: aux_f64(aux, "epsilon")?,
        })
    }
}

// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub(crate) struct Homogeneity {
    b: Bundle,
    c: f64,
}

impl Case for Homogeneity {
    const META: Meta = Meta {
        name: "homogeneity",
        kind: PropertyKind::Derived,
        implied_by_axioms: false,
        relation: Relation::Equal,
    };

    fn generate(rng: &mut ChaCha8Rng, cfg: &CheckConfig, _trial: u64) -> Self {
        let b = random_bundle(rng, cfg, 1, 1);
        let roll: f64 = rng.random();
        let c = if roll < 0.1 {
            0.0
        } else if roll < 0.2 {
            1.0
        } else {
            rng.random_range(0.0..=1e3)
        };
        Homogeneity { b, c }
    }

    fn sides(&self, m: &dyn MeanSystem) -> Result<(f64, f64)> {
        let w = wt(&self.b.w)?;
        let x = vals(&self.b.cols[0])?;
        Ok((m.evaluate(&w, &x.scale(self.c)?)?, self.c * m.evaluate(&w, &x)?))
    }

    fn candidates(&self) -> Vec<Self> {
        let mut out: Vec<Self> = self
            .b
            .shrinks()
            .into_iter()
            .map(|(b, _)| Homogeneity { b, c: self.c })
            .collect();
        for (_, t) in value_snaps(&[self.c]) {
            out.push(Homogeneity { b: self.b.clone(), c: t });
        }
        out
    }

    fn complexity(&self) -> (usize, usize) {
        (self.b.size(), self.b.nonsimple() + nonsimple(&[self.c]))
    }

    fn weight_vectors(&self) -> Vec<&[f64]> {
        vec![&self.b.w]
    }

    fn witness(&self) -> (Vec<f64>, Vec<f64>, Value) {
        (self.b.w.clone(), self.b.cols[0].clone(), json!({ "c": self.c }))
    }

    fn from_witness(w: &[f64], x: &[f64], aux: &Value) -> Option<Self> {
        Some(Homogeneity {
            b: bundle_from(w, vec![x.to_vec()])?,
            c: aux_f64(aux, "c")?,
        })
    }
}
