//! Monte-Carlo frame-error-rate experiments.
//!
//! Frame `k` of a run draws its codeword and noise from ChaCha stream `k`
//! under the experiment seed, so results depend only on the spec and never
//! on the number of workers. Frames are decoded in parallel batches and
//! folded in frame order; the run stops exactly at the frame that reaches
//! the error target.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bp::{BpConfig, BpDecoder, BpVariant};
use crate::channel::{channel_llrs, llr_quantize, sigma_from_ebn0, transmit, LlrProfile};
use crate::code::{load_code, nullspace_basis, NullspaceBasis, ParityCheckMatrix};
use crate::decoder::{AdmmDecoder, DecoderConfig};
use crate::error::{Error, Result};
use crate::fixed::table;

pub const CSV_HEADER: &str = "snr_db,frames,frame_errors,bit_errors,fer,ber,mean_iterations";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecoderKind {
    AdmmDouble,
    AdmmFixed,
    Bp,
    MinSum,
}

impl DecoderKind {
    pub const ALL: [DecoderKind; 4] = [
        DecoderKind::AdmmDouble,
        DecoderKind::AdmmFixed,
        DecoderKind::Bp,
        DecoderKind::MinSum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DecoderKind::AdmmDouble => "admm-double",
            DecoderKind::AdmmFixed => "admm-fixed",
            DecoderKind::Bp => "bp",
            DecoderKind::MinSum => "min-sum",
        }
    }
}

impl fmt::Display for DecoderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for DecoderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DecoderKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown decoder {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    /// Built-in code name or path to an alist / QC shift file.
    pub code: String,
    pub decoder: DecoderKind,
    /// ADMM penalty; ignored by BP.
    pub alpha: f64,
    pub max_iters: usize,
    pub snr_points_db: Vec<f64>,
    pub target_frame_errors: u64,
    pub max_frames: u64,
    pub seed: u64,
    pub workers: usize,
    pub saturation_a: f64,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            code: "tanner155".into(),
            decoder: DecoderKind::AdmmDouble,
            alpha: 0.1,
            max_iters: 60,
            snr_points_db: vec![2.0],
            target_frame_errors: 100,
            max_frames: 1_000_000,
            seed: 0,
            workers: 1,
            saturation_a: 1.0,
        }
    }
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::Config(msg.into()));
        if self.snr_points_db.is_empty() {
            return bad("no SNR points");
        }
        if self.snr_points_db.iter().any(|s| !s.is_finite()) {
            return bad("SNR points must be finite");
        }
        if self.target_frame_errors == 0 {
            return bad("target_frame_errors must be at least 1");
        }
        if self.max_frames == 0 {
            return bad("max_frames must be at least 1");
        }
        if self.workers == 0 {
            return bad("workers must be at least 1");
        }
        if !(self.saturation_a > 0.0) {
            return bad("saturation parameter must be positive");
        }
        self.decoder_config().validate()
    }

    fn decoder_config(&self) -> DecoderConfig {
        match self.decoder {
            DecoderKind::AdmmFixed => DecoderConfig::fixed(self.alpha, self.max_iters),
            _ => DecoderConfig::double(self.alpha, self.max_iters),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FerRecord {
    pub snr_db: f64,
    pub frames: u64,
    pub frame_errors: u64,
    pub bit_errors: u64,
    pub fer: f64,
    pub ber: f64,
    pub mean_iterations: f64,
}

impl FerRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.snr_db,
            self.frames,
            self.frame_errors,
            self.bit_errors,
            self.fer,
            self.ber,
            self.mean_iterations
        )
    }
}

#[derive(Debug, Clone)]
enum FrameDecoder {
    Admm(AdmmDecoder, LlrProfile),
    Bp(BpDecoder),
}

/// Outcome of one simulated frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameOutcome {
    pub bit_errors: u64,
    pub iterations: u64,
}

/// An experiment with its code loaded and decoder built.
#[derive(Debug, Clone)]
pub struct Experiment {
    spec: ExperimentSpec,
    h: ParityCheckMatrix,
    basis: NullspaceBasis,
    decoder: FrameDecoder,
}

impl Experiment {
    pub fn new(spec: ExperimentSpec) -> Result<Self> {
        spec.validate()?;
        let h = load_code(&spec.code)?;
        Self::with_matrix(spec, h)
    }

    /// Runs `spec` on `h` instead of loading `spec.code`.
    pub fn with_matrix(spec: ExperimentSpec, h: ParityCheckMatrix) -> Result<Self> {
        spec.validate()?;
        let basis = nullspace_basis(&h);
        if basis.dimension() == 0 {
            return Err(Error::InvalidMatrix("code has no nonzero codewords".into()));
        }
        let decoder = match spec.decoder {
            DecoderKind::AdmmDouble => {
                FrameDecoder::Admm(AdmmDecoder::new(&h, spec.decoder_config())?, LlrProfile::Double)
            }
            DecoderKind::AdmmFixed => FrameDecoder::Admm(
                AdmmDecoder::new(&h, spec.decoder_config())?,
                LlrProfile::Fixed(table::LLR),
            ),
            DecoderKind::Bp | DecoderKind::MinSum => {
                let variant = if spec.decoder == DecoderKind::Bp {
                    BpVariant::SumProduct
                } else {
                    BpVariant::MinSum
                };
                FrameDecoder::Bp(BpDecoder::new(
                    &h,
                    BpConfig {
                        max_iters: spec.max_iters,
                        variant,
                        early_termination: true,
                    },
                )?)
            }
        };
        Ok(Experiment {
            spec,
            h,
            basis,
            decoder,
        })
    }

    pub fn spec(&self) -> &ExperimentSpec {
        &self.spec
    }

    pub fn matrix(&self) -> &ParityCheckMatrix {
        &self.h
    }

    pub fn rate(&self) -> f64 {
        self.basis.dimension() as f64 / self.h.n() as f64
    }

    /// Simulates frame `index` at noise level `sigma`.
    pub fn run_frame(&self, sigma: f64, index: u64) -> Result<FrameOutcome> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.spec.seed);
        rng.set_stream(index);
        let codeword = self.basis.sample_codeword(&mut rng);
        let y = transmit(&codeword, sigma, &mut rng);
        let result = match &self.decoder {
            FrameDecoder::Admm(dec, profile) => {
                dec.decode(&llr_quantize(&y, sigma, self.spec.saturation_a, *profile))?
            }
            FrameDecoder::Bp(dec) => dec.decode(&channel_llrs(&y, sigma))?,
        };
        let bit_errors = result.bits.iter().zip(&codeword).filter(|(a, b)| a != b).count();
        Ok(FrameOutcome {
            bit_errors: bit_errors as u64,
            iterations: result.iterations_used as u64,
        })
    }

    pub fn run_point(&self, snr_db: f64) -> Result<FerRecord> {
        let sigma = sigma_from_ebn0(snr_db, self.rate())?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.spec.workers)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        let batch = (self.spec.workers as u64 * 32).max(32);

        let mut frames = 0u64;
        let mut frame_errors = 0u64;
        let mut bit_errors = 0u64;
        let mut iterations = 0u64;
        'outer: while frames < self.spec.max_frames {
            let end = (frames + batch).min(self.spec.max_frames);
            let outcomes: Vec<FrameOutcome> = pool.install(|| {
                (frames..end)
                    .into_par_iter()
                    .map(|k| self.run_frame(sigma, k))
                    .collect::<Result<_>>()
            })?;
            for o in outcomes {
                frames += 1;
                iterations += o.iterations;
                if o.bit_errors > 0 {
                    frame_errors += 1;
                    bit_errors += o.bit_errors;
                    if frame_errors >= self.spec.target_frame_errors {
                        break 'outer;
                    }
                }
            }
        }
        Ok(FerRecord {
            snr_db,
            frames,
            frame_errors,
            bit_errors,
            fer: frame_errors as f64 / frames as f64,
            ber: bit_errors as f64 / (frames as f64 * self.h.n() as f64),
            mean_iterations: iterations as f64 / frames as f64,
        })
    }

    pub fn run_sweep(&self) -> Result<Vec<FerRecord>> {
        self.spec
            .snr_points_db
            .iter()
            .map(|&s| self.run_point(s))
            .collect()
    }
}

pub fn run_point(spec: &ExperimentSpec, snr_db: f64) -> Result<FerRecord> {
    Experiment::new(spec.clone())?.run_point(snr_db)
}

pub fn run_sweep(spec: &ExperimentSpec) -> Result<Vec<FerRecord>> {
    Experiment::new(spec.clone())?.run_sweep()
}

/// CSV text with header, one row per record.
pub fn to_csv(records: &[FerRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn write_csv(path: &Path, records: &[FerRecord]) -> Result<()> {
    std::fs::write(path, to_csv(records))?;
    Ok(())
}

#[derive(Serialize)]
struct JsonReport<'a> {
    spec: &'a ExperimentSpec,
    records: &'a [FerRecord],
}

/// Writes the records together with the spec that produced them.
pub fn write_json(path: &Path, spec: &ExperimentSpec, records: &[FerRecord]) -> Result<()> {
    let mut f = std::fs::File::create(path)?;
    serde_json::to_writer_pretty(&mut f, &JsonReport { spec, records })?;
    f.write_all(b"\n")?;
    Ok(())
}

/// SNR points whose FER is higher than at the previous point.
pub fn non_monotone_points(records: &[FerRecord]) -> Vec<f64> {
    records
        .windows(2)
        .filter(|w| w[1].snr_db > w[0].snr_db && w[1].fer > w[0].fer)
        .map(|w| w[1].snr_db)
        .collect()
}
