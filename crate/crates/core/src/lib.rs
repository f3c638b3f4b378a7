//! Penalized LP decoding of LDPC codes by ADMM, with a bit-accurate
//! fixed-point model of the decoder datapath, a belief-propagation
//! baseline and a Monte-Carlo frame-error-rate harness.
//!
//! ```
//! use admm_lp::channel::{llr_quantize, sigma_from_ebn0, transmit, LlrProfile};
//! use admm_lp::code::{load_builtin_code, nullspace_basis};
//! use admm_lp::fixed::table;
//! use admm_lp::{AdmmDecoder, DecoderConfig};
//! use rand::SeedableRng;
//!
//! let h = load_builtin_code("tanner155")?;
//! let basis = nullspace_basis(&h);
//! let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
//! let cw = basis.sample_codeword(&mut rng);
//! let sigma = sigma_from_ebn0(3.0, 64.0 / 155.0)?;
//! let y = transmit(&cw, sigma, &mut rng);
//! let dec = AdmmDecoder::new(&h, DecoderConfig::fixed(0.1, 60))?;
//! let result = dec.decode(&llr_quantize(&y, sigma, 1.0, LlrProfile::Fixed(table::LLR)))?;
//! assert_eq!(result.bits.len(), 155);
//! # Ok::<(), admm_lp::Error>(())
//! ```

pub mod bp;
pub mod channel;
pub mod code;
pub mod decoder;
pub mod error;
pub mod fixed;
mod graph;
pub mod harness;
pub mod projection;

pub use channel::{LlrProfile, LlrVector};
pub use code::{ParityCheckMatrix, QcShiftMatrix};
pub use decoder::{decode, hard_decision, AdmmDecoder, DecodeResult, DecodeStatus, DecoderConfig};
pub use error::{Error, Result};
pub use fixed::{FixedValue, QFormat};
pub use harness::{run_point, run_sweep, DecoderKind, ExperimentSpec, FerRecord};
