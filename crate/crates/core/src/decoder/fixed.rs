//! Bit-accurate fixed-point datapath of the ADMM decoder.
//!
//! Every stored quantity has its own format. Sums and products are formed
//! exactly on wide integers and rounded (half away from zero) and
//! saturated once, when written back.

use serde::{Deserialize, Serialize};

use super::{finish, DecodeResult, DecodeStatus, DecoderConfig};
use crate::channel::LlrVector;
use crate::fixed::{quantize, reciprocal, resize, table, QFormat, RECIPROCAL_FRAC_BITS};
use crate::graph::EdgeGraph;
use crate::projection::fixed::{FixedProjector, ProjectionFormats};

/// Formats of every stored quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedProfile {
    /// Channel costs `gamma`, and the penalty `alpha`.
    pub llr: QFormat,
    /// `t = sum(messages) - gamma`.
    pub var_sum: QFormat,
    /// `s = t + alpha sign(t)`.
    pub var_penalized: QFormat,
    /// Estimate `x`.
    pub estimate: QFormat,
    /// Check-to-variable messages and dual state `lambda`.
    pub message: QFormat,
    pub projection: ProjectionFormats,
}

impl Default for FixedProfile {
    fn default() -> Self {
        FixedProfile {
            llr: table::LLR,
            var_sum: table::VAR_SUM,
            var_penalized: table::VAR_PENALIZED,
            estimate: table::ESTIMATE,
            message: table::MESSAGE,
            projection: ProjectionFormats::default(),
        }
    }
}

/// Fixed-point update rules with the penalty and reciprocals pre-quantized.
#[derive(Debug, Clone)]
pub struct FixedDatapath {
    profile: FixedProfile,
    alpha: i64,
    recips: Vec<i64>,
}

/// Mantissas produced by one fixed-point check update.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedCheckOutput {
    pub lambda: Vec<i64>,
    pub messages: Vec<i64>,
    pub replica: Vec<i64>,
}

impl FixedDatapath {
    pub fn new(profile: FixedProfile, alpha: f64) -> Self {
        FixedDatapath {
            profile,
            alpha: quantize(alpha, profile.llr).raw(),
            recips: vec![0],
        }
    }

    pub fn profile(&self) -> &FixedProfile {
        &self.profile
    }

    /// Mantissa of the quantized penalty.
    pub fn alpha_raw(&self) -> i64 {
        self.alpha
    }

    fn recip(&mut self, deg: usize) -> i64 {
        while self.recips.len() <= deg {
            let k = self.recips.len() as u32;
            self.recips.push(reciprocal(k).raw());
        }
        self.recips[deg]
    }

    /// Variable update on mantissas: messages in the message format, `gamma`
    /// in the LLR format, result in the estimate format.
    pub fn variable_update(&mut self, incoming: &[i64], gamma: i64) -> i64 {
        let p = self.profile;
        let (mf, lf) = (p.message.frac_bits(), p.llr.frac_bits());
        let frac = mf.max(lf);
        let sum: i128 = incoming.iter().map(|&m| (m as i128) << (frac - mf)).sum::<i128>()
            - ((gamma as i128) << (frac - lf));
        let t = p.var_sum.requantize(sum, frac) as i128;
        let tf = p.var_sum.frac_bits();
        let af = frac.max(tf);
        let t_wide = t << (af - tf);
        let a_wide = (self.alpha as i128) << (af - lf);
        let s = p.var_penalized.requantize(t_wide + t_wide.signum() * a_wide, af);
        let recip = self.recip(incoming.len());
        let x = p.estimate.requantize(
            s as i128 * recip as i128,
            p.var_penalized.frac_bits() + RECIPROCAL_FRAC_BITS,
        );
        let half = 1i64 << (p.estimate.frac_bits() - 1);
        x.clamp(-half, half)
    }

    /// Check update on mantissas: estimates in the estimate format, dual
    /// state in the message format.
    pub fn check_update(
        &self,
        projector: &mut FixedProjector,
        x: &[i64],
        lambda: &[i64],
    ) -> FixedCheckOutput {
        let d = x.len();
        assert_eq!(lambda.len(), d);
        let mut v = vec![0; d];
        self.check_sums(x, lambda, &mut v);
        let mut out = FixedCheckOutput {
            lambda: vec![0; d],
            messages: vec![0; d],
            replica: vec![0; d],
        };
        projector.project_raw(&v, &mut out.replica);
        for k in 0..d {
            let (l, m) = self.dual_and_message(v[k], out.replica[k]);
            out.lambda[k] = l;
            out.messages[k] = m;
        }
        out
    }

    fn check_sums(&self, x: &[i64], lambda: &[i64], v: &mut [i64]) {
        let p = self.profile;
        let (xf, mf) = (p.estimate.frac_bits(), p.message.frac_bits());
        let frac = xf.max(mf);
        for ((o, &xi), &li) in v.iter_mut().zip(x).zip(lambda) {
            let s = ((xi as i128) << (frac - xf)) + ((li as i128) << (frac - mf));
            *o = p.projection.input.requantize(s, frac);
        }
    }

    /// New dual state `v - z` and message `2z - v`, both in the message
    /// format. The message is formed as `z - lambda_new` from the stored
    /// dual state, so the two stay consistent to the last bit.
    fn dual_and_message(&self, v: i64, z: i64) -> (i64, i64) {
        let p = self.profile;
        let (vf, zf, mf) = (
            p.projection.input.frac_bits(),
            p.projection.output.frac_bits(),
            p.message.frac_bits(),
        );
        let frac = vf.max(zf).max(mf);
        let v = (v as i128) << (frac - vf);
        let z = (z as i128) << (frac - zf);
        let lambda = p.message.requantize(v - z, frac);
        let msg = p.message.requantize(z - ((lambda as i128) << (frac - mf)), frac);
        (lambda, msg)
    }

    fn gamma_raw(&self, gamma: &LlrVector) -> Vec<i64> {
        match gamma {
            LlrVector::Fixed(g) => g.iter().map(|&x| resize(x, self.profile.llr).raw()).collect(),
            LlrVector::Double(g) => g.iter().map(|&x| quantize(x, self.profile.llr).raw()).collect(),
        }
    }

    pub(crate) fn decode(mut self, g: &EdgeGraph, cfg: &DecoderConfig, gamma: &LlrVector) -> DecodeResult {
        let gamma = self.gamma_raw(gamma);
        let edges = g.edge_var.len();
        let mut x = vec![0i64; g.n()];
        let mut lambda = vec![0i64; edges];
        let mut msgs = vec![0i64; edges];
        let mut bits = vec![0u8; g.n()];
        let mut incoming = Vec::new();
        let mut xs = Vec::new();
        let mut v = Vec::new();
        let mut z = Vec::new();
        let mut projector = FixedProjector::new(self.profile.projection);

        let mut iterations = 0;
        while iterations < cfg.max_iters {
            iterations += 1;
            for i in 0..g.n() {
                incoming.clear();
                incoming.extend(g.var_edges(i).iter().map(|&e| msgs[e]));
                x[i] = self.variable_update(&incoming, gamma[i]);
            }
            for j in 0..g.m() {
                let range = g.check_edges(j);
                xs.clear();
                xs.extend(range.clone().map(|e| x[g.edge_var[e]]));
                v.resize(xs.len(), 0);
                z.resize(xs.len(), 0);
                self.check_sums(&xs, &lambda[range.clone()], &mut v);
                projector.project_raw(&v, &mut z);
                for (k, e) in range.enumerate() {
                    let (l, m) = self.dual_and_message(v[k], z[k]);
                    lambda[e] = l;
                    msgs[e] = m;
                }
            }
            if cfg.early_termination {
                for (b, &xi) in bits.iter_mut().zip(&x) {
                    *b = (xi > 0) as u8;
                }
                if g.satisfied(&bits) {
                    return DecodeResult {
                        bits,
                        status: DecodeStatus::Codeword,
                        iterations_used: iterations,
                        final_x: self.estimates(&x),
                    };
                }
            }
        }
        let xf = self.estimates(&x);
        finish(g, xf, iterations, cfg.integrality_tolerance())
    }

    fn estimates(&self, x: &[i64]) -> Vec<f64> {
        let lsb = self.profile.estimate.lsb();
        x.iter().map(|&r| r as f64 * lsb).collect()
    }
}
