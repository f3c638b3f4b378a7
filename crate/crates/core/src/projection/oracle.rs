//! Brute-force reference projections and polytope certificates.
//!
//! These share no code with the fast projections: the simplex oracle tries
//! every clip-set size against the KKT conditions, and the parity-polytope
//! oracle runs Frank-Wolfe with away steps over the explicitly enumerated
//! even-weight vertices.

use crate::error::{Error, Result};

/// Largest dimension accepted by [`oracle_project_parity_polytope`].
pub const MAX_POLYTOPE_DIM: usize = 12;
/// Largest dimension accepted by [`oracle_project_simplex`].
pub const MAX_SIMPLEX_DIM: usize = 64;

/// Projection onto the centered simplex by exhaustive active-set search.
///
/// For `k` clipped coordinates (the `k` smallest inputs), the free ones are
/// shifted by the `tau` that meets the sum constraint. The first `k` whose
/// solution is feasible and whose clipped inputs lie below the shifted
/// threshold satisfies the KKT conditions and is the unique projection.
pub fn oracle_project_simplex(v: &[f64]) -> Result<Vec<f64>> {
    let d = v.len();
    if d > MAX_SIMPLEX_DIM {
        return Err(Error::Capacity(d));
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| v[b].total_cmp(&v[a]));
    let target = 1.0 - d as f64 / 2.0;

    let mut best: Option<(f64, Vec<f64>)> = None;
    for clipped in 0..d {
        let free = &order[..d - clipped];
        let free_sum: f64 = free.iter().map(|&i| v[i]).sum();
        let tau = (free_sum - target - 0.5 * clipped as f64) / free.len() as f64;
        let mut w = vec![-0.5; d];
        for &i in free {
            w[i] = v[i] - tau;
        }
        let primal_ok = free.iter().all(|&i| w[i] >= -0.5 - 1e-12);
        let dual_ok = order[d - clipped..].iter().all(|&i| v[i] - tau <= -0.5 + 1e-12);
        if primal_ok && dual_ok {
            return Ok(w);
        }
        // keep the least-violating candidate in case of round-off
        let violation = free
            .iter()
            .map(|&i| (-0.5 - w[i]).max(0.0))
            .chain(order[d - clipped..].iter().map(|&i| (v[i] - tau + 0.5).max(0.0)))
            .fold(0.0, f64::max);
        if best.as_ref().is_none_or(|(b, _)| violation < *b) {
            best = Some((violation, w));
        }
    }
    Ok(best.expect("d >= 1").1)
}

/// All even-weight vertices of the centered `d`-cube, as `+-1/2` vectors.
pub fn even_weight_vertices(d: usize) -> Vec<Vec<f64>> {
    (0u64..1 << d)
        .filter(|m| m.count_ones() % 2 == 0)
        .map(|m| {
            (0..d)
                .map(|i| if m >> i & 1 == 1 { 0.5 } else { -0.5 })
                .collect()
        })
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Projection onto the centered parity polytope by Frank-Wolfe with away
/// steps over the explicit vertex list.
///
/// Runs at most `iters` steps and stops early once the Frank-Wolfe duality
/// gap certifies the squared distance to the optimum is below `1e-20`.
pub fn oracle_project_parity_polytope(v: &[f64], iters: usize) -> Result<Vec<f64>> {
    let d = v.len();
    if d > MAX_POLYTOPE_DIM {
        return Err(Error::Capacity(d));
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let verts = even_weight_vertices(d);
    let dist2 = |a: &[f64]| a.iter().zip(v).map(|(x, y)| (x - y).powi(2)).sum::<f64>();

    let start = (0..verts.len())
        .min_by(|&a, &b| dist2(&verts[a]).total_cmp(&dist2(&verts[b])))
        .expect("at least one vertex");
    let mut weights = vec![0.0; verts.len()];
    weights[start] = 1.0;
    let mut w = verts[start].clone();
    let mut grad = vec![0.0; d];
    let mut dir = vec![0.0; d];

    for step in 0..iters {
        for k in 0..d {
            grad[k] = 2.0 * (w[k] - v[k]);
        }
        let gw = dot(&grad, &w);
        let (fw, fw_val) = verts
            .iter()
            .enumerate()
            .map(|(k, e)| (k, dot(&grad, e)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        let gap = gw - fw_val;
        // the objective is 2-strongly convex, so ||w - w*||^2 <= gap
        if gap <= 1e-20 {
            break;
        }
        let (away, away_val) = weights
            .iter()
            .enumerate()
            .filter(|(_, &l)| l > 0.0)
            .map(|(k, _)| (k, dot(&grad, &verts[k])))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("active set nonempty");

        let toward = gap >= away_val - gw;
        let max_step = if toward {
            for k in 0..d {
                dir[k] = verts[fw][k] - w[k];
            }
            1.0
        } else {
            for k in 0..d {
                dir[k] = w[k] - verts[away][k];
            }
            let la = weights[away];
            if la >= 1.0 {
                f64::INFINITY
            } else {
                la / (1.0 - la)
            }
        };
        let norm2 = dot(&dir, &dir);
        if norm2 == 0.0 {
            break;
        }
        let step_len = (-dot(&grad, &dir) / (2.0 * norm2)).clamp(0.0, max_step);
        if toward {
            for l in weights.iter_mut() {
                *l *= 1.0 - step_len;
            }
            weights[fw] += step_len;
        } else {
            for l in weights.iter_mut() {
                *l *= 1.0 + step_len;
            }
            weights[away] -= step_len;
            if step_len == max_step {
                weights[away] = 0.0;
            }
        }
        // rebuild from the weights now and then to shed drift
        if step % 64 == 63 {
            let total: f64 = weights.iter().sum();
            w.iter_mut().for_each(|x| *x = 0.0);
            for (l, e) in weights.iter_mut().zip(&verts) {
                *l /= total;
                for k in 0..d {
                    w[k] += *l * e[k];
                }
            }
        } else {
            for k in 0..d {
                w[k] += step_len * dir[k];
            }
        }
    }
    Ok(w)
}

/// Largest violation of the parity-polytope description of a centered
/// point: every odd-set cut and the `[-1/2, 1/2]` box, checked in
/// non-centered coordinates `x = w + 1/2`. Enumerates all `2^(d-1)` cuts.
pub fn max_cut_violation(w: &[f64]) -> f64 {
    let d = w.len();
    assert!(d <= 24, "cut enumeration is exponential in d");
    let x: Vec<f64> = w.iter().map(|&c| c + 0.5).collect();
    let mut worst = x
        .iter()
        .map(|&xi| (-xi).max(xi - 1.0))
        .fold(f64::NEG_INFINITY, f64::max);
    for mask in 0u64..1 << d {
        let size = mask.count_ones();
        if size % 2 == 0 {
            continue;
        }
        let lhs: f64 = (0..d)
            .map(|i| if mask >> i & 1 == 1 { x[i] } else { -x[i] })
            .sum();
        worst = worst.max(lhs - (size as f64 - 1.0));
    }
    worst
}

/// Violation of the cut for one odd set `mask` (bit `i` set = `i` in set).
pub fn cut_violation(w: &[f64], mask: &[bool]) -> f64 {
    let size = mask.iter().filter(|&&b| b).count();
    let lhs: f64 = w
        .iter()
        .zip(mask)
        .map(|(&c, &m)| if m { c + 0.5 } else { -(c + 0.5) })
        .sum();
    lhs - (size as f64 - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_oracle_examples() {
        assert_eq!(oracle_project_simplex(&[1.0, 1.0]).unwrap(), vec![0.0, 0.0]);
        assert_eq!(oracle_project_simplex(&[0.5, -0.5]).unwrap(), vec![0.5, -0.5]);
        let w = oracle_project_simplex(&[-0.6, -0.6, -0.6]).unwrap();
        for x in w {
            assert!((x + 1.0 / 6.0).abs() < 1e-12);
        }
        let w = oracle_project_simplex(&[3.0, 0.0, -2.0]).unwrap();
        assert_eq!(w, vec![0.5, -0.5, -0.5]);
        assert!(oracle_project_simplex(&vec![0.0; 65]).is_err());
    }

    #[test]
    fn polytope_oracle_examples() {
        let w = oracle_project_parity_polytope(&[0.0, 0.0, 0.0], 100_000).unwrap();
        assert!(w.iter().all(|x| x.abs() < 1e-6), "{w:?}");
        let w = oracle_project_parity_polytope(&[0.6, 0.6, 0.6], 100_000).unwrap();
        for x in &w {
            assert!((x - 1.0 / 6.0).abs() < 1e-4, "{w:?}");
        }
        assert!(max_cut_violation(&w) <= 1e-9);
        assert!(oracle_project_parity_polytope(&[0.0; 13], 1).is_err());
    }

    #[test]
    fn vertex_enumeration() {
        let v = even_weight_vertices(4);
        assert_eq!(v.len(), 8);
        assert!(v.iter().all(|e| e.iter().filter(|&&x| x > 0.0).count() % 2 == 0));
        for e in &v {
            assert!(max_cut_violation(e) <= 1e-12);
        }
    }

    #[test]
    fn cut_checks() {
        // (1/2, 1/2, 1/2) is the odd vertex (1, 1, 1), violating S = {1,2,3}
        assert!((max_cut_violation(&[0.5, 0.5, 0.5]) - 1.0).abs() < 1e-12);
        assert!((cut_violation(&[0.5, 0.5, 0.5], &[true, true, true]) - 1.0).abs() < 1e-12);
        assert!(max_cut_violation(&[0.4, -0.4, 0.3]) <= 0.0);
    }
}
