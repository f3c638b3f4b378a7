//! Signed fixed-point arithmetic in `Qi.f` layouts.
//!
//! A `Qi.f` number has one sign bit, `i` integer bits and `f` fraction bits.
//! Every value is an integer mantissa `raw` scaled by `2^-f`. The mantissa
//! range is symmetric, `[-(2^(W-1) - 1), 2^(W-1) - 1]` with `W = 1 + i + f`,
//! so negation never overflows. Narrowing conversions round half away from
//! zero and saturate; both choices are sign-symmetric.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Layout of a signed fixed-point number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QFormat {
    int_bits: u8,
    frac_bits: u8,
}

impl QFormat {
    /// Builds a format, rejecting layouts wider than 64 bits.
    pub fn new(int_bits: u8, frac_bits: u8) -> Result<Self, Error> {
        if 1 + int_bits as u32 + frac_bits as u32 > 64 {
            return Err(Error::InvalidFormat(format!(
                "Q{int_bits}.{frac_bits} is wider than 64 bits"
            )));
        }
        Ok(QFormat {
            int_bits,
            frac_bits,
        })
    }

    /// `const` constructor for formats known to be valid.
    pub const fn q(int_bits: u8, frac_bits: u8) -> Self {
        assert!(1 + int_bits as u32 + frac_bits as u32 <= 64);
        QFormat {
            int_bits,
            frac_bits,
        }
    }

    pub const fn int_bits(self) -> u32 {
        self.int_bits as u32
    }

    pub const fn frac_bits(self) -> u32 {
        self.frac_bits as u32
    }

    /// Total width including the sign bit.
    pub const fn width(self) -> u32 {
        1 + self.int_bits as u32 + self.frac_bits as u32
    }

    /// Largest representable mantissa; the smallest is its negation.
    pub const fn max_raw(self) -> i64 {
        if self.width() == 64 {
            i64::MAX
        } else {
            (1i64 << (self.width() - 1)) - 1
        }
    }

    /// Weight of one least significant bit.
    pub fn lsb(self) -> f64 {
        (-(self.frac_bits as f64)).exp2()
    }

    pub fn max_value(self) -> f64 {
        self.max_raw() as f64 * self.lsb()
    }

    /// Clamps a wide mantissa into range.
    #[inline]
    pub fn saturate(self, raw: i128) -> i64 {
        let max = self.max_raw() as i128;
        raw.clamp(-max, max) as i64
    }

    /// Converts a mantissa with `from_frac` fraction bits into this format,
    /// rounding dropped bits half away from zero and saturating.
    #[inline]
    pub fn requantize(self, raw: i128, from_frac: u32) -> i64 {
        let to = self.frac_bits();
        let aligned = if to >= from_frac {
            shl_saturating(raw, to - from_frac)
        } else {
            round_shr(raw, from_frac - to)
        };
        self.saturate(aligned)
    }
}

impl fmt::Display for QFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}.{}", self.int_bits, self.frac_bits)
    }
}

impl FromStr for QFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::InvalidFormat(format!("expected `Qi.f`, got {s:?}"));
        let body = s.strip_prefix('Q').ok_or_else(bad)?;
        let (i, f) = body.split_once('.').ok_or_else(bad)?;
        let i: u8 = i.parse().map_err(|_| bad())?;
        let f: u8 = f.parse().map_err(|_| bad())?;
        QFormat::new(i, f)
    }
}

/// Right shift by `k` bits with round-half-away-from-zero.
#[inline]
pub fn round_shr(raw: i128, k: u32) -> i128 {
    if k == 0 {
        return raw;
    }
    if k >= 127 {
        return 0;
    }
    let half = 1i128 << (k - 1);
    if raw >= 0 {
        (raw + half) >> k
    } else {
        -((-raw + half) >> k)
    }
}

#[inline]
fn shl_saturating(raw: i128, k: u32) -> i128 {
    if raw == 0 {
        return 0;
    }
    if k >= 127 || raw.unsigned_abs().leading_zeros() <= k + 1 {
        return if raw > 0 { i128::MAX } else { -i128::MAX };
    }
    raw << k
}

/// A value in a particular [`QFormat`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedValue {
    raw: i64,
    fmt: QFormat,
}

impl FixedValue {
    /// Wraps a mantissa, saturating it into the format range.
    pub fn from_raw(raw: i64, fmt: QFormat) -> Self {
        FixedValue {
            raw: fmt.saturate(raw as i128),
            fmt,
        }
    }

    pub fn zero(fmt: QFormat) -> Self {
        FixedValue { raw: 0, fmt }
    }

    pub fn raw(self) -> i64 {
        self.raw
    }

    pub fn format(self) -> QFormat {
        self.fmt
    }

    pub fn to_f64(self) -> f64 {
        self.raw as f64 * self.fmt.lsb()
    }
}

impl fmt::Display for FixedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.to_f64(), self.fmt)
    }
}

/// Rounds `x` to the nearest representable value, ties away from zero,
/// saturating out-of-range inputs. NaN maps to zero.
pub fn quantize(x: f64, fmt: QFormat) -> FixedValue {
    if x.is_nan() {
        return FixedValue::zero(fmt);
    }
    let scaled = (x * (fmt.frac_bits() as f64).exp2()).round();
    let max = fmt.max_raw() as f64;
    let raw = if scaled >= max {
        fmt.max_raw()
    } else if scaled <= -max {
        -fmt.max_raw()
    } else {
        scaled as i64
    };
    FixedValue { raw, fmt }
}

/// Converts between formats: fraction bits are rounded or zero-extended,
/// integer overflow saturates.
pub fn resize(a: FixedValue, out: QFormat) -> FixedValue {
    FixedValue {
        raw: out.requantize(a.raw as i128, a.fmt.frac_bits()),
        fmt: out,
    }
}

/// Exact sum after aligning binary points, then resized to `out`.
pub fn add(a: FixedValue, b: FixedValue, out: QFormat) -> FixedValue {
    let frac = a.fmt.frac_bits().max(b.fmt.frac_bits());
    let wa = (a.raw as i128) << (frac - a.fmt.frac_bits());
    let wb = (b.raw as i128) << (frac - b.fmt.frac_bits());
    FixedValue {
        raw: out.requantize(wa + wb, frac),
        fmt: out,
    }
}

/// Exact product of `a` with a reciprocal constant, resized to `out`.
pub fn mul_reciprocal(a: FixedValue, recip: FixedValue, out: QFormat) -> FixedValue {
    let prod = a.raw as i128 * recip.raw as i128;
    FixedValue {
        raw: out.requantize(prod, a.fmt.frac_bits() + recip.fmt.frac_bits()),
        fmt: out,
    }
}

/// Fraction bits of the reciprocal constants used for division by small
/// integers (a 25-bit word: sign plus 24 fraction bits).
pub const RECIPROCAL_FRAC_BITS: u32 = 24;

/// Reciprocal format `Q0.24`.
pub const RECIPROCAL: QFormat = QFormat::q(0, RECIPROCAL_FRAC_BITS as u8);

/// `round(2^24 / divisor) / 2^24` as a fixed-point constant.
///
/// Divisors of 2 and above fit `Q0.24`. A divisor of 1 cannot, since 1.0 is
/// one past the top of that range, so it is returned exactly in `Q1.24`.
pub fn reciprocal(divisor: u32) -> FixedValue {
    assert!(divisor >= 1, "reciprocal of zero");
    let one = 1i64 << RECIPROCAL_FRAC_BITS;
    if divisor == 1 {
        return FixedValue {
            raw: one,
            fmt: QFormat::q(1, RECIPROCAL_FRAC_BITS as u8),
        };
    }
    let d = divisor as i64;
    FixedValue::from_raw((one + d / 2) / d, RECIPROCAL)
}

/// Formats of the bit-accurate decoder datapath.
pub mod table {
    use super::QFormat;

    /// Channel LLR input.
    pub const LLR: QFormat = QFormat::q(0, 7);
    /// Variable-node incoming message sum.
    pub const VAR_SUM: QFormat = QFormat::q(4, 7);
    /// Penalized variable-node sum.
    pub const VAR_PENALIZED: QFormat = QFormat::q(5, 7);
    /// Variable estimates and variable-to-check messages.
    pub const ESTIMATE: QFormat = QFormat::q(0, 9);
    /// Check-to-variable messages and check states.
    pub const MESSAGE: QFormat = QFormat::q(2, 7);
    /// Check-node sum `x + lambda`, the projection input.
    pub const CHECK_SUM: QFormat = QFormat::q(3, 9);
    /// Replica vector, the projection output.
    pub const REPLICA: QFormat = QFormat::q(0, 12);
    /// Sign-flipped projection input and the sorted simplex input.
    pub const FLIPPED: QFormat = QFormat::q(4, 9);
    /// Simplex projection output.
    pub const SIMPLEX_OUT: QFormat = QFormat::q(0, 13);

    /// Every distinct format used by the datapath.
    pub const ALL: [QFormat; 9] = [
        LLR,
        VAR_SUM,
        VAR_PENALIZED,
        ESTIMATE,
        MESSAGE,
        CHECK_SUM,
        REPLICA,
        FLIPPED,
        SIMPLEX_OUT,
    ];
}
