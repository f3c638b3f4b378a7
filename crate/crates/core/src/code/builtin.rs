//! Shift matrices of the codes shipped with the crate.

use std::path::Path;

use super::{ParityCheckMatrix, QcShiftMatrix};
use crate::error::{Error, Result};

/// Names accepted by [`load_builtin_code`].
pub const BUILTIN_CODES: [&str; 3] = ["tanner155", "wigig672", "ensemble1002-example"];

const TANNER: [[u32; 5]; 3] = [[30, 29, 27, 23, 15], [26, 21, 11, 22, 13], [6, 12, 24, 17, 3]];

const ENSEMBLE: [[u32; 6]; 3] = [
    [115, 13, 25, 166, 17, 129],
    [124, 38, 137, 13, 160, 136],
    [75, 152, 89, 73, 0, 145],
];

const WIGIG: &str = "\
42 3 16
29 30 0 8 33 22 17 4 27 28 20 27 24 23 - -
37 31 18 23 11 21 6 20 32 9 12 29 10 0 13 -
25 22 4 34 31 3 14 15 4 2 14 18 13 13 22 24
";

/// Shift matrix of a built-in code.
pub fn builtin_shifts(name: &str) -> Result<QcShiftMatrix> {
    match name {
        "tanner155" => QcShiftMatrix::from_dense_shifts(31, &TANNER),
        "wigig672" => WIGIG.parse(),
        "ensemble1002-example" => QcShiftMatrix::from_dense_shifts(167, &ENSEMBLE),
        _ => Err(Error::UnknownCode(name.to_string())),
    }
}

/// Expanded parity-check matrix of a built-in code:
///
/// * `tanner155`: the [155, 64] Tanner code, 3 x 5 circulants of size 31.
/// * `wigig672`: the rate-13/16 WiGig code, 3 x 16 circulants of size 42.
/// * `ensemble1002-example`: a (3, 6)-regular code, 3 x 6 circulants of
///   size 167.
pub fn load_builtin_code(name: &str) -> Result<ParityCheckMatrix> {
    Ok(builtin_shifts(name)?.expand())
}

/// Loads a built-in code by name, or reads a file: `.alist` files as alist,
/// anything else as a QC shift file.
pub fn load_code(name_or_path: &str) -> Result<ParityCheckMatrix> {
    if BUILTIN_CODES.contains(&name_or_path) {
        return load_builtin_code(name_or_path);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(Error::UnknownCode(name_or_path.to_string()));
    }
    let text = std::fs::read_to_string(path)?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("alist")) {
        ParityCheckMatrix::from_alist(&text)
    } else {
        Ok(text.parse::<QcShiftMatrix>()?.expand())
    }
}
