//! Shrinking moves on raw weight/value vectors.
//!
//! Moves either shorten the input (merge or drop coordinates) or push
//! entries onto the simple set `{0, 1/2, 1}`. The shrinker only accepts a
//! move when the pair `(length, number of non-simple entries)` strictly
//! decreases, so it always terminates at a local minimum.

use super::gen::normalize;

pub(crate) const SNAP_TARGETS: [f64; 3] = [0.0, 0.5, 1.0];

pub(crate) fn is_simple(v: f64) -> bool {
    SNAP_TARGETS.contains(&v)
}

pub(crate) fn nonsimple(vs: &[f64]) -> usize {
    vs.iter().filter(|v| !is_simple(**v)).count()
}

pub(crate) fn without(v: &[f64], i: usize) -> Vec<f64> {
    let mut out = v.to_vec();
    out.remove(i);
    out
}

/// Removes coordinate `i` and renormalizes; `None` if nothing would remain.
pub(crate) fn drop_weight(w: &[f64], i: usize) -> Option<Vec<f64>> {
    if w.len() < 2 {
        return None;
    }
    let rest = without(w, i);
    if rest.iter().all(|v| *v == 0.0) {
        return None;
    }
    Some(normalize(rest))
}

/// Point masses and adjacent half/half splits.
pub(crate) fn weight_snaps(w: &[f64]) -> Vec<Vec<f64>> {
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        out.push(e);
    }
    for i in 0..n.saturating_sub(1) {
        let mut h = vec![0.0; n];
        h[i] = 0.5;
        h[i + 1] = 0.5;
        out.push(h);
    }
    out.retain(|c| c.as_slice() != w);
    out
}

/// `(index, target)` pairs moving one entry onto `{0, 1/2, 1}`.
pub(crate) fn value_snaps(v: &[f64]) -> Vec<(usize, f64)> {
    let mut out = Vec::new();
    for (i, &vi) in v.iter().enumerate() {
        if is_simple(vi) {
            continue;
        }
        for t in SNAP_TARGETS {
            out.push((i, t));
        }
    }
    out
}

/// A weighting with parallel value columns over the same index set.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Bundle {
    pub w: Vec<f64>,
    pub cols: Vec<Vec<f64>>,
}

impl Bundle {
    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn size(&self) -> usize {
        self.w.len() * (1 + self.cols.len())
    }

    pub fn nonsimple(&self) -> usize {
        nonsimple(&self.w) + self.cols.iter().map(|c| nonsimple(c)).sum::<usize>()
    }

    /// Candidate shrinks, each with the (original) indices it removed.
    pub fn shrinks(&self) -> Vec<(Bundle, Vec<usize>)> {
        let n = self.n();
        let mut out = Vec::new();
        if n >= 4 {
            // halve by merging (0,1), (2,3), …
            let mut w = Vec::new();
            let mut cols: Vec<Vec<f64>> = vec![Vec::new(); self.cols.len()];
            let mut removed = Vec::new();
            for i in (0..n).step_by(2) {
                let extra = if i + 1 < n { self.w[i + 1] } else { 0.0 };
                w.push(self.w[i] + extra);
                for (c, src) in cols.iter_mut().zip(&self.cols) {
                    c.push(src[i]);
                }
                if i + 1 < n {
                    removed.push(i + 1);
                }
            }
            out.push((Bundle { w, cols }, removed));
        }
        for i in 0..n.saturating_sub(1) {
            let mut w = without(&self.w, i + 1);
            w[i] += self.w[i + 1];
            let cols = self.cols.iter().map(|c| without(c, i + 1)).collect();
            out.push((Bundle { w, cols }, vec![i + 1]));
        }
        for i in 0..n {
            if let Some(w) = drop_weight(&self.w, i) {
                let cols = self.cols.iter().map(|c| without(c, i)).collect();
                out.push((Bundle { w, cols }, vec![i]));
            }
        }
        for w in weight_snaps(&self.w) {
            out.push((
                Bundle {
                    w,
                    cols: self.cols.clone(),
                },
                vec![],
            ));
        }
        for (k, col) in self.cols.iter().enumerate() {
            for (i, t) in value_snaps(col) {
                let mut b = self.clone();
                b.cols[k][i] = t;
                out.push((b, vec![]));
            }
        }
        out
    }
}

/// Renumbers a permutation after deleting the given positions/values.
pub(crate) fn remove_from_permutation(perm: &[usize], removed: &[usize]) -> Vec<usize> {
    perm.iter()
        .filter(|p| !removed.contains(p))
        .map(|&p| p - removed.iter().filter(|&&r| r < p).count())
        .collect()
}
