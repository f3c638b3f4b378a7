//! Flooding belief propagation in the LLR domain, the comparison baseline.

use serde::{Deserialize, Serialize};

use crate::code::ParityCheckMatrix;
use crate::decoder::{DecodeResult, DecodeStatus};
use crate::error::{check_len, Error, Result};
use crate::graph::EdgeGraph;

/// Internal LLR clip, keeping `tanh` and `atanh` away from saturation.
pub const LLR_CLIP: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BpVariant {
    SumProduct,
    MinSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BpConfig {
    pub max_iters: usize,
    pub variant: BpVariant,
    pub early_termination: bool,
}

impl Default for BpConfig {
    fn default() -> Self {
        BpConfig {
            max_iters: 60,
            variant: BpVariant::SumProduct,
            early_termination: true,
        }
    }
}

/// Sum-product check rule: each output is `2 atanh(prod tanh(l/2))` over the
/// other inputs.
pub fn sum_product_check(incoming: &[f64], out: &mut [f64]) {
    let d = incoming.len();
    assert_eq!(out.len(), d);
    let t: Vec<f64> = incoming.iter().map(|&l| (l.clamp(-LLR_CLIP, LLR_CLIP) / 2.0).tanh()).collect();
    // out[k] holds the product of everything before k, then times everything after
    let mut acc = 1.0;
    for k in 0..d {
        out[k] = acc;
        acc *= t[k];
    }
    acc = 1.0;
    for k in (0..d).rev() {
        let p = (out[k] * acc).clamp(-1.0 + 1e-15, 1.0 - 1e-15);
        out[k] = (2.0 * p.atanh()).clamp(-LLR_CLIP, LLR_CLIP);
        acc *= t[k];
    }
}

/// Min-sum check rule: sign product times the smallest other magnitude.
pub fn min_sum_check(incoming: &[f64], out: &mut [f64]) {
    let d = incoming.len();
    assert_eq!(out.len(), d);
    let mut min1 = f64::INFINITY;
    let mut min2 = f64::INFINITY;
    let mut arg = 0;
    let mut negative = false;
    for (k, &l) in incoming.iter().enumerate() {
        let a = l.abs().min(LLR_CLIP);
        negative ^= l < 0.0;
        if a < min1 {
            min2 = min1;
            min1 = a;
            arg = k;
        } else if a < min2 {
            min2 = a;
        }
    }
    for (k, o) in out.iter_mut().enumerate() {
        let mag = if k == arg { min2 } else { min1 };
        let neg = negative ^ (incoming[k] < 0.0);
        *o = if neg { -mag } else { mag };
    }
}

/// Decodes channel LLRs (positive favors bit 0).
pub fn bp_decode(h: &ParityCheckMatrix, gamma: &[f64], cfg: &BpConfig) -> Result<DecodeResult> {
    BpDecoder::new(h, *cfg)?.decode(gamma)
}

/// BP decoder bound to one parity-check matrix.
#[derive(Debug, Clone)]
pub struct BpDecoder {
    graph: EdgeGraph,
    cfg: BpConfig,
}

impl BpDecoder {
    pub fn new(h: &ParityCheckMatrix, cfg: BpConfig) -> Result<Self> {
        if cfg.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        Ok(BpDecoder {
            graph: EdgeGraph::new(h),
            cfg,
        })
    }

    pub fn decode(&self, gamma: &[f64]) -> Result<DecodeResult> {
        let g = &self.graph;
        check_len(g.n(), gamma.len())?;
        let gamma: Vec<f64> = gamma.iter().map(|l| l.clamp(-LLR_CLIP, LLR_CLIP)).collect();
        let edges = g.edge_var.len();
        let mut c2v = vec![0.0; edges];
        let mut v2c = vec![0.0; edges];
        let mut posterior = gamma.clone();
        let mut bits = vec![0u8; g.n()];
        let mut scratch_in = Vec::new();
        let mut scratch_out = Vec::new();

        let mut iterations = 0;
        while iterations < self.cfg.max_iters {
            iterations += 1;
            for i in 0..g.n() {
                let es = g.var_edges(i);
                let total = gamma[i] + es.iter().map(|&e| c2v[e]).sum::<f64>();
                for &e in es {
                    v2c[e] = (total - c2v[e]).clamp(-LLR_CLIP, LLR_CLIP);
                }
            }
            for j in 0..g.m() {
                let r = g.check_edges(j);
                scratch_in.clear();
                scratch_in.extend_from_slice(&v2c[r.clone()]);
                scratch_out.resize(scratch_in.len(), 0.0);
                match self.cfg.variant {
                    BpVariant::SumProduct => sum_product_check(&scratch_in, &mut scratch_out),
                    BpVariant::MinSum => min_sum_check(&scratch_in, &mut scratch_out),
                }
                c2v[r].copy_from_slice(&scratch_out);
            }
            for (i, p) in posterior.iter_mut().enumerate() {
                *p = gamma[i] + g.var_edges(i).iter().map(|&e| c2v[e]).sum::<f64>();
            }
            for (b, &p) in bits.iter_mut().zip(&posterior) {
                *b = (p < 0.0) as u8;
            }
            if self.cfg.early_termination && g.satisfied(&bits) {
                break;
            }
        }
        let status = if g.satisfied(&bits) {
            DecodeStatus::Codeword
        } else {
            DecodeStatus::NonCodeword
        };
        Ok(DecodeResult {
            bits,
            status,
            iterations_used: iterations,
            final_x: posterior,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_bit_repetition() {
        let h = ParityCheckMatrix::from_dense(&[[1u8, 1]]).unwrap();
        let r = bp_decode(&h, &[2.0, -1.0], &BpConfig::default()).unwrap();
        assert_eq!(r.bits, vec![0, 0]);
        assert_eq!(r.status, DecodeStatus::Codeword);
    }

    #[test]
    fn clean_input_decodes_in_one_iteration() {
        let h = ParityCheckMatrix::from_dense(&[[1u8, 1, 0, 1], [0, 1, 1, 1]]).unwrap();
        let cw = [1u8, 0, 1, 1];
        let gamma: Vec<f64> = cw.iter().map(|&b| if b == 0 { 20.0 } else { -20.0 }).collect();
        for variant in [BpVariant::SumProduct, BpVariant::MinSum] {
            let cfg = BpConfig { variant, ..Default::default() };
            let r = bp_decode(&h, &gamma, &cfg).unwrap();
            assert_eq!(r.bits, cw);
            assert_eq!(r.iterations_used, 1);
        }
    }

    #[test]
    fn check_rules_examples() {
        let mut out = [0.0; 3];
        min_sum_check(&[1.0, -2.0, 3.0], &mut out);
        assert_eq!(out, [-2.0, 1.0, -1.0]);
        sum_product_check(&[1.0, -2.0, 3.0], &mut out);
        let f = |a: f64, b: f64| 2.0 * ((a / 2.0).tanh() * (b / 2.0).tanh()).atanh();
        assert!((out[0] - f(-2.0, 3.0)).abs() < 1e-12);
        assert!((out[1] - f(1.0, 3.0)).abs() < 1e-12);
        assert!((out[2] - f(1.0, -2.0)).abs() < 1e-12);
    }

    #[test]
    fn check_rules_agree_on_signs() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5000 {
            let d = rng.gen_range(2..12);
            let inc: Vec<f64> = (0..d)
                .map(|_| {
                    let l: f64 = rng.gen_range(0.01..10.0);
                    if rng.gen_bool(0.5) { -l } else { l }
                })
                .collect();
            let mut a = vec![0.0; d];
            let mut b = vec![0.0; d];
            sum_product_check(&inc, &mut a);
            min_sum_check(&inc, &mut b);
            for k in 0..d {
                assert_eq!(a[k] < 0.0, b[k] < 0.0, "{inc:?}");
            }
        }
    }

    /// Random tree-structured code: each new check ties one existing
    /// variable to fresh ones.
    fn random_tree(n_target: usize, rng: &mut ChaCha8Rng) -> ParityCheckMatrix {
        let mut rows = Vec::new();
        let mut n = 1;
        while n < n_target {
            let fresh = rng.gen_range(1..=(n_target - n).min(3));
            let mut row = vec![rng.gen_range(0..n)];
            row.extend(n..n + fresh);
            n += fresh;
            rows.push(row);
        }
        ParityCheckMatrix::from_check_neighborhoods(n, rows).unwrap()
    }

    #[test]
    fn tree_decisions_are_bitwise_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cfg = BpConfig {
            max_iters: 30,
            early_termination: false,
            ..Default::default()
        };
        for _ in 0..100 {
            let h = random_tree(rng.gen_range(4..=12), &mut rng);
            let n = h.n();
            let gamma: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let mut p1 = vec![0.0; n];
            let mut total = 0.0;
            for w in 0u32..1 << n {
                let b: Vec<u8> = (0..n).map(|i| (w >> i & 1) as u8).collect();
                if !h.is_codeword(&b).unwrap() {
                    continue;
                }
                let p = (-(0..n).map(|i| b[i] as f64 * gamma[i]).sum::<f64>()).exp();
                total += p;
                for i in 0..n {
                    if b[i] == 1 {
                        p1[i] += p;
                    }
                }
            }
            let map: Vec<u8> = p1.iter().map(|&p| (p > total - p) as u8).collect();
            let r = bp_decode(&h, &gamma, &cfg).unwrap();
            for i in 0..n {
                let margin = (p1[i] / (total - p1[i])).ln().abs();
                if margin > 1e-9 {
                    assert_eq!(r.bits[i], map[i], "bit {i}");
                    assert!((r.final_x[i] + (p1[i] / (total - p1[i])).ln()).abs() < 1e-6);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        let h = ParityCheckMatrix::from_dense(&[[1u8, 1]]).unwrap();
        assert!(bp_decode(&h, &[1.0], &BpConfig::default()).is_err());
        let cfg = BpConfig { max_iters: 0, ..Default::default() };
        assert!(bp_decode(&h, &[1.0, 1.0], &cfg).is_err());
    }
}
