//! Euclidean projections onto the centered unit hypercube, the centered
//! probability simplex and the centered parity polytope.
//!
//! "Centered" sets are shifted by `-1/2` in every coordinate, so the
//! hypercube is `[-1/2, 1/2]^d`, the simplex is
//! `{w : sum(w) = 1 - d/2, w_i >= -1/2}` and the parity polytope is the
//! convex hull of the even-weight vertices of that hypercube.

pub mod fixed;
#[cfg(feature = "oracles")]
pub mod oracle;

use crate::error::{check_len, Error, Result};

/// Clips `x` to `[lo, hi]`.
pub fn project_interval(x: f64, lo: f64, hi: f64) -> Result<f64> {
    if !(lo <= hi) {
        return Err(Error::InvalidInterval { lo, hi });
    }
    Ok(x.max(lo).min(hi))
}

#[inline]
fn clip_half(x: f64) -> f64 {
    x.clamp(-0.5, 0.5)
}

/// Componentwise projection onto `[-1/2, 1/2]^d`.
pub fn project_hypercube(v: &[f64]) -> Vec<f64> {
    v.iter().map(|&x| clip_half(x)).collect()
}

/// Odd-weight hypercube vertex selecting the candidate violated cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetIndicator(Vec<bool>);

impl FacetIndicator {
    pub fn new(bits: Vec<bool>) -> Self {
        FacetIndicator(bits)
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

/// Index of the smallest magnitude, lowest index on ties.
#[inline]
fn argmin_abs(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate().skip(1) {
        if x.abs() < v[best].abs() {
            best = i;
        }
    }
    best
}

/// Nearest hypercube vertex (`f_i = 1` iff `v_i >= 0`), pushed to odd
/// weight by flipping the coordinate of least magnitude.
pub fn identify_facet(v: &[f64]) -> FacetIndicator {
    let mut f: Vec<bool> = v.iter().map(|&x| x >= 0.0).collect();
    if f.iter().filter(|&&b| b).count() % 2 == 0 && !v.is_empty() {
        let i = argmin_abs(v);
        f[i] = !f[i];
    }
    FacetIndicator(f)
}

/// Negates the components selected by `f`. The map is its own inverse.
pub fn similarity_transform(v: &[f64], f: &FacetIndicator) -> Result<Vec<f64>> {
    check_len(v.len(), f.len())?;
    Ok(v.iter()
        .zip(f.bits())
        .map(|(&x, &flip)| if flip { -x } else { x })
        .collect())
}

/// Projection onto the centered probability simplex by sorting and
/// selecting the common shift.
pub fn project_centered_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    let mut out = vec![0.0; v.len()];
    simplex_into(v, &mut sorted, &mut out);
    out
}

/// `sorted` is scratch of the same length as `v`.
fn simplex_into(v: &[f64], sorted: &mut [f64], out: &mut [f64]) {
    sorted.copy_from_slice(v);
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut prefix = -1.0;
    let mut shift = 0.0;
    for (i, &rho) in sorted.iter().enumerate() {
        prefix += rho;
        let candidate = prefix / (i + 1) as f64;
        // the shift is u_i for the largest i with rho_i > u_i
        if rho > candidate {
            shift = candidate;
        }
    }
    // the upper clamp only absorbs round-off; exact outputs never exceed 1/2
    for (w, &x) in out.iter_mut().zip(v) {
        *w = (x - shift - 0.5).clamp(-0.5, 0.5);
    }
}

/// True when the hypercube projection of the transformed point satisfies
/// the identified cut `sum(clip(v_tilde)) >= 1 - d/2`.
pub fn membership_test(v_tilde: &[f64]) -> bool {
    let sum: f64 = v_tilde.iter().map(|&x| clip_half(x)).sum();
    sum >= 1.0 - v_tilde.len() as f64 / 2.0
}

/// Projection onto the centered parity polytope.
pub fn project_parity_polytope(v: &[f64]) -> Vec<f64> {
    let mut projector = ParityProjector::new();
    let mut out = vec![0.0; v.len()];
    projector.project(v, &mut out);
    out
}

/// Parity-polytope projection with reusable scratch buffers.
#[derive(Debug, Default, Clone)]
pub struct ParityProjector {
    facet: Vec<bool>,
    flipped: Vec<f64>,
    sorted: Vec<f64>,
    shell: Vec<f64>,
}

impl ParityProjector {
    pub fn new() -> Self {
        Self::default()
    }

    /// Writes the projection of `v` into `out` (same length).
    ///
    /// The membership test runs first; the simplex projection is skipped
    /// for points whose hypercube projection already lies in the polytope.
    pub fn project(&mut self, v: &[f64], out: &mut [f64]) {
        let d = v.len();
        assert_eq!(out.len(), d);
        if d == 0 {
            return;
        }
        self.facet.clear();
        self.facet.extend(v.iter().map(|&x| x >= 0.0));
        if self.facet.iter().filter(|&&b| b).count() % 2 == 0 {
            let i = argmin_abs(v);
            self.facet[i] = !self.facet[i];
        }
        self.flipped.clear();
        self.flipped.extend(
            v.iter()
                .zip(&self.facet)
                .map(|(&x, &f)| if f { -x } else { x }),
        );

        if membership_test(&self.flipped) {
            for (o, &x) in out.iter_mut().zip(v) {
                *o = clip_half(x);
            }
            return;
        }
        self.sorted.resize(d, 0.0);
        self.shell.resize(d, 0.0);
        simplex_into(&self.flipped, &mut self.sorted, &mut self.shell);
        for ((o, &u), &f) in out.iter_mut().zip(&self.shell).zip(&self.facet) {
            *o = if f { -u } else { u };
        }
    }
}

#[cfg(test)]
mod tests;
