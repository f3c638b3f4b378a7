//! Binary linear codes: parity-check matrices, quasi-cyclic construction,
//! null-space sampling and girth.

mod builtin;
mod gf2;
mod girth;
mod matrix;
mod qc;

pub use builtin::{builtin_shifts, load_builtin_code, load_code, BUILTIN_CODES};
pub use gf2::{nullspace_basis, rank, BitVec, NullspaceBasis};
pub use girth::girth;
pub use matrix::ParityCheckMatrix;
pub use qc::{sample_qc_ensemble, QcShiftMatrix, ENSEMBLE_RETRY_BUDGET};
