//! ADMM penalized linear-programming decoder.
//!
//! Each iteration runs every variable update and then every check update
//! (flooding schedule). A variable averages its incoming check messages
//! against its LLR, pushes the result away from zero by the penalty `alpha`
//! and clips it to `[-1/2, 1/2]`; the estimate is broadcast unchanged to all
//! neighboring checks. A check adds its dual state to the incoming
//! estimates, projects the sum onto the parity polytope and emits updated
//! dual state and messages.

pub mod fixed;

use serde::{Deserialize, Serialize};

use crate::channel::LlrVector;
use crate::code::ParityCheckMatrix;
use crate::error::{check_len, Error, Result};
use crate::graph::EdgeGraph;
use crate::projection::ParityProjector;

pub use fixed::{FixedDatapath, FixedProfile};

/// Arithmetic used by the decoder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Arithmetic {
    Double,
    Fixed(FixedProfile),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecoderConfig {
    /// Penalty weight on `||x||_1`; zero gives plain LP decoding.
    pub alpha: f64,
    pub max_iters: usize,
    /// Stop as soon as the rounded estimate satisfies every check.
    pub early_termination: bool,
    pub arithmetic: Arithmetic,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            alpha: 0.1,
            max_iters: 60,
            early_termination: true,
            arithmetic: Arithmetic::Double,
        }
    }
}

impl DecoderConfig {
    pub fn double(alpha: f64, max_iters: usize) -> Self {
        DecoderConfig {
            alpha,
            max_iters,
            ..Default::default()
        }
    }

    pub fn fixed(alpha: f64, max_iters: usize) -> Self {
        DecoderConfig {
            alpha,
            max_iters,
            arithmetic: Arithmetic::Fixed(FixedProfile::default()),
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0) || !self.alpha.is_finite() {
            return Err(Error::Config(format!("alpha must be >= 0, got {}", self.alpha)));
        }
        if self.max_iters == 0 {
            return Err(Error::Config("max_iters must be at least 1".into()));
        }
        Ok(())
    }

    /// Estimates within this distance of `+-1/2` count as integral.
    pub fn integrality_tolerance(&self) -> f64 {
        match self.arithmetic {
            Arithmetic::Double => 1e-5,
            Arithmetic::Fixed(p) => p.estimate.lsb(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DecodeStatus {
    /// The hard decision satisfies every check.
    Codeword,
    /// The hard decision fails a check and the estimate is (near) integral.
    NonCodeword,
    /// The hard decision fails a check and some estimate is fractional,
    /// the signature of a pseudocodeword.
    PseudocodewordSuspect,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecodeResult {
    pub bits: Vec<u8>,
    pub status: DecodeStatus,
    pub iterations_used: usize,
    /// Final estimate in `[-1/2, 1/2]^n` (ADMM) or final posterior LLRs (BP).
    pub final_x: Vec<f64>,
}

impl DecodeResult {
    pub fn is_codeword(&self) -> bool {
        self.status == DecodeStatus::Codeword
    }

    /// True when every estimate lies within `tol` of `+-1/2`.
    pub fn is_integral(&self, tol: f64) -> bool {
        self.final_x.iter().all(|x| x.abs() >= 0.5 - tol)
    }
}

/// `1` where the estimate is positive, `0` otherwise (ties go to 0).
pub fn hard_decision(x: &[f64]) -> Vec<u8> {
    x.iter().map(|&v| (v > 0.0) as u8).collect()
}

/// One variable update: `t = sum(incoming) - gamma`, `s = t + alpha sign(t)`
/// (no penalty when `t = 0`), estimate `clip(s / deg)`.
pub fn variable_update(incoming: &[f64], gamma: f64, alpha: f64) -> f64 {
    let deg = incoming.len();
    assert!(deg >= 1, "variable degree must be positive");
    let t: f64 = incoming.iter().sum::<f64>() - gamma;
    let s = penalize(t, alpha);
    (s / deg as f64).clamp(-0.5, 0.5)
}

#[inline]
fn penalize(t: f64, alpha: f64) -> f64 {
    if t > 0.0 {
        t + alpha
    } else if t < 0.0 {
        t - alpha
    } else {
        t
    }
}

/// Output of one check update.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutput {
    pub lambda: Vec<f64>,
    pub messages: Vec<f64>,
    /// The projected replica `z`.
    pub replica: Vec<f64>,
}

/// One check update: `v = x + lambda`, `z = P(v)`, new dual `v - z` and
/// messages `2z - v`, computed as `z - lambda_new`.
pub fn check_update(x_nbrs: &[f64], lambda: &[f64]) -> Result<CheckOutput> {
    check_len(x_nbrs.len(), lambda.len())?;
    let v: Vec<f64> = x_nbrs.iter().zip(lambda).map(|(x, l)| x + l).collect();
    let mut z = vec![0.0; v.len()];
    ParityProjector::new().project(&v, &mut z);
    let lambda: Vec<f64> = v.iter().zip(&z).map(|(v, z)| v - z).collect();
    let messages = z.iter().zip(&lambda).map(|(z, l)| z - l).collect();
    Ok(CheckOutput {
        lambda,
        messages,
        replica: z,
    })
}

/// Decoder bound to one parity-check matrix. Shareable across threads;
/// every call allocates its own state.
#[derive(Debug, Clone)]
pub struct AdmmDecoder {
    graph: EdgeGraph,
    cfg: DecoderConfig,
}

/// Per-iteration hook used by diagnostics: `(iteration, x, lambda, z)`.
/// `z` is laid out edge by edge like `lambda`.
pub type IterationObserver<'a> = dyn FnMut(usize, &[f64], &[f64], &[f64]) + 'a;

impl AdmmDecoder {
    pub fn new(h: &ParityCheckMatrix, cfg: DecoderConfig) -> Result<Self> {
        cfg.validate()?;
        h.validate_for_decoding()?;
        Ok(AdmmDecoder {
            graph: EdgeGraph::new(h),
            cfg,
        })
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.cfg
    }

    pub fn decode(&self, gamma: &LlrVector) -> Result<DecodeResult> {
        check_len(self.graph.n(), gamma.len())?;
        match self.cfg.arithmetic {
            Arithmetic::Double => Ok(self.decode_double(&gamma.to_f64(), None)),
            Arithmetic::Fixed(profile) => {
                let datapath = FixedDatapath::new(profile, self.cfg.alpha);
                Ok(datapath.decode(&self.graph, &self.cfg, gamma))
            }
        }
    }

    /// Double-precision decode reporting the state after every iteration.
    pub fn decode_observed(
        &self,
        gamma: &[f64],
        observer: &mut IterationObserver<'_>,
    ) -> Result<DecodeResult> {
        check_len(self.graph.n(), gamma.len())?;
        if !matches!(self.cfg.arithmetic, Arithmetic::Double) {
            return Err(Error::Config("observation needs the double profile".into()));
        }
        Ok(self.decode_double(gamma, Some(observer)))
    }

    fn decode_double(
        &self,
        gamma: &[f64],
        mut observer: Option<&mut IterationObserver<'_>>,
    ) -> DecodeResult {
        let g = &self.graph;
        let alpha = self.cfg.alpha;
        let edges = g.edge_var.len();
        let mut x = vec![0.0; g.n()];
        let mut lambda = vec![0.0; edges];
        let mut msgs = vec![0.0; edges];
        let mut replica = vec![0.0; edges];
        let mut bits = vec![0u8; g.n()];
        let mut v = Vec::new();
        let mut z = Vec::new();
        let mut projector = ParityProjector::new();

        let mut iterations = 0;
        while iterations < self.cfg.max_iters {
            iterations += 1;
            for (i, xi) in x.iter_mut().enumerate() {
                let edges = g.var_edges(i);
                let t: f64 = edges.iter().map(|&e| msgs[e]).sum::<f64>() - gamma[i];
                *xi = (penalize(t, alpha) / edges.len() as f64).clamp(-0.5, 0.5);
            }
            for j in 0..g.m() {
                let range = g.check_edges(j);
                v.clear();
                v.extend(range.clone().map(|e| x[g.edge_var[e]] + lambda[e]));
                z.resize(v.len(), 0.0);
                projector.project(&v, &mut z);
                for (k, e) in range.enumerate() {
                    let l = v[k] - z[k];
                    lambda[e] = l;
                    msgs[e] = z[k] - l;
                    replica[e] = z[k];
                }
            }
            if let Some(obs) = observer.as_deref_mut() {
                obs(iterations, &x, &lambda, &replica);
            }
            if self.cfg.early_termination {
                for (b, &xi) in bits.iter_mut().zip(&x) {
                    *b = (xi > 0.0) as u8;
                }
                if g.satisfied(&bits) {
                    return DecodeResult {
                        bits,
                        status: DecodeStatus::Codeword,
                        iterations_used: iterations,
                        final_x: x,
                    };
                }
            }
        }
        finish(g, x, iterations, self.cfg.integrality_tolerance())
    }
}

pub(crate) fn finish(g: &EdgeGraph, x: Vec<f64>, iterations: usize, tol: f64) -> DecodeResult {
    let bits = hard_decision(&x);
    let status = if g.satisfied(&bits) {
        DecodeStatus::Codeword
    } else if x.iter().any(|v| v.abs() < 0.5 - tol) {
        DecodeStatus::PseudocodewordSuspect
    } else {
        DecodeStatus::NonCodeword
    };
    DecodeResult {
        bits,
        status,
        iterations_used: iterations,
        final_x: x,
    }
}

/// Decodes `gamma` with a one-off [`AdmmDecoder`].
pub fn decode(h: &ParityCheckMatrix, gamma: &LlrVector, cfg: &DecoderConfig) -> Result<DecodeResult> {
    AdmmDecoder::new(h, *cfg)?.decode(gamma)
}
