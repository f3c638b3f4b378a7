//! Bit-accurate parity-polytope projection on fixed-point mantissas.
//!
//! Mirrors the floating-point path step by step: sign-bit facet
//! identification, sign flips, an exact integer membership test and the
//! sorted-shift simplex projection with reciprocal multiplies for the
//! prefix-sum normalization. Wide intermediates are exact; rounding happens
//! only where a value is stored in a narrower format.

use crate::fixed::{reciprocal, table, FixedValue, QFormat, RECIPROCAL_FRAC_BITS};

/// Formats used inside the projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ProjectionFormats {
    /// Projection input `v`.
    pub input: QFormat,
    /// Sign-flipped input and the sorted simplex input.
    pub flipped: QFormat,
    /// Simplex projection output.
    pub simplex_out: QFormat,
    /// Projection output.
    pub output: QFormat,
}

impl Default for ProjectionFormats {
    fn default() -> Self {
        ProjectionFormats {
            input: table::CHECK_SUM,
            flipped: table::FLIPPED,
            simplex_out: table::SIMPLEX_OUT,
            output: table::REPLICA,
        }
    }
}

/// Fixed-point projector with scratch space and cached reciprocals.
#[derive(Debug, Clone)]
pub struct FixedProjector {
    fmt: ProjectionFormats,
    recips: Vec<i64>,
    facet: Vec<bool>,
    flipped: Vec<i64>,
    sorted: Vec<i64>,
}

impl FixedProjector {
    pub fn new(fmt: ProjectionFormats) -> Self {
        assert!(
            fmt.flipped.frac_bits() >= 1 && fmt.flipped.frac_bits() == fmt.input.frac_bits(),
            "flipped format must keep the input fraction bits"
        );
        FixedProjector {
            fmt,
            recips: vec![0],
            facet: Vec::new(),
            flipped: Vec::new(),
            sorted: Vec::new(),
        }
    }

    pub fn formats(&self) -> ProjectionFormats {
        self.fmt
    }

    fn ensure_recips(&mut self, d: usize) {
        while self.recips.len() <= d {
            let k = self.recips.len() as u32;
            self.recips.push(reciprocal(k).raw());
        }
    }

    /// Projects mantissas in the input format, writing mantissas in the
    /// output format.
    pub fn project_raw(&mut self, v: &[i64], out: &mut [i64]) {
        let d = v.len();
        assert_eq!(out.len(), d);
        if d == 0 {
            return;
        }
        self.ensure_recips(d);
        let frac = self.fmt.input.frac_bits();
        let half = 1i64 << (frac - 1);

        self.facet.clear();
        self.facet.extend(v.iter().map(|&x| x >= 0));
        if self.facet.iter().filter(|&&b| b).count() % 2 == 0 {
            let mut best = 0;
            for (i, x) in v.iter().enumerate().skip(1) {
                if x.abs() < v[best].abs() {
                    best = i;
                }
            }
            self.facet[best] = !self.facet[best];
        }
        let flipped_fmt = self.fmt.flipped;
        self.flipped.clear();
        self.flipped.extend(v.iter().zip(&self.facet).map(|(&x, &f)| {
            flipped_fmt.saturate(if f { -(x as i128) } else { x as i128 })
        }));

        let clipped_sum: i64 = self.flipped.iter().map(|&t| t.clamp(-half, half)).sum();
        if clipped_sum >= (2 - d as i64) * half {
            for (o, &x) in out.iter_mut().zip(v) {
                *o = self.fmt.output.requantize(x.clamp(-half, half) as i128, frac);
            }
            return;
        }

        self.sorted.clear();
        self.sorted.extend_from_slice(&self.flipped);
        self.sorted.sort_by(|a, b| b.cmp(a));
        // shifts carry frac + 24 fraction bits and are exact
        let wide = frac + RECIPROCAL_FRAC_BITS;
        let mut prefix = -(1i128 << frac);
        let mut shift = 0i128;
        for (i, &rho) in self.sorted.iter().enumerate() {
            prefix += rho as i128;
            let candidate = prefix * self.recips[i + 1] as i128;
            if (rho as i128) << RECIPROCAL_FRAC_BITS > candidate {
                shift = candidate;
            }
        }
        let wide_half = (half as i128) << RECIPROCAL_FRAC_BITS;
        let simplex_out = self.fmt.simplex_out;
        let output = self.fmt.output;
        for ((o, &t), &f) in out.iter_mut().zip(&self.flipped).zip(&self.facet) {
            let w = (((t as i128) << RECIPROCAL_FRAC_BITS) - shift - wide_half).max(-wide_half);
            let u = simplex_out.requantize(w, wide) as i128;
            let u = if f { -u } else { u };
            *o = output.requantize(u, simplex_out.frac_bits());
        }
    }

    /// Convenience wrapper over [`Self::project_raw`] on typed values; inputs
    /// are first resized to the input format.
    pub fn project(&mut self, v: &[FixedValue]) -> Vec<FixedValue> {
        let raw: Vec<i64> = v
            .iter()
            .map(|&x| crate::fixed::resize(x, self.fmt.input).raw())
            .collect();
        let mut out = vec![0; v.len()];
        self.project_raw(&raw, &mut out);
        out.into_iter()
            .map(|r| FixedValue::from_raw(r, self.fmt.output))
            .collect()
    }
}

impl Default for FixedProjector {
    fn default() -> Self {
        Self::new(ProjectionFormats::default())
    }
}
