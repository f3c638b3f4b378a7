//! BPSK over AWGN, and the saturating LLR front end.
//!
//! Bit 0 is sent as `+1` and bit 1 as `-1`, so a positive LLR favors bit 0.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed::{table, FixedValue, QFormat};

/// Channel-side settings of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelConfig {
    pub ebn0_db: f64,
    /// Code rate `k / n`.
    pub rate: f64,
    /// Channel outputs saturate at `+-(1 + a * sigma)`.
    pub saturation_a: f64,
    /// LLR format used by the fixed-point decoder.
    pub llr_format: QFormat,
    pub seed: u64,
}

impl ChannelConfig {
    pub fn new(ebn0_db: f64, rate: f64) -> Self {
        ChannelConfig {
            ebn0_db,
            rate,
            saturation_a: 1.0,
            llr_format: table::LLR,
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rate > 0.0 && self.rate <= 1.0) {
            return Err(Error::Config(format!("code rate {} not in (0, 1]", self.rate)));
        }
        if !(self.saturation_a > 0.0) {
            return Err(Error::Config("saturation parameter must be positive".into()));
        }
        Ok(())
    }

    pub fn sigma(&self) -> Result<f64> {
        sigma_from_ebn0(self.ebn0_db, self.rate)
    }

    /// Saturation level `1 + a * sigma`.
    pub fn saturation(&self, sigma: f64) -> f64 {
        1.0 + self.saturation_a * sigma
    }
}

/// Noise standard deviation for unit-energy antipodal signaling at the
/// given `Eb/N0` (dB) and code rate.
pub fn sigma_from_ebn0(ebn0_db: f64, rate: f64) -> Result<f64> {
    if !(rate > 0.0 && rate <= 1.0) {
        return Err(Error::Config(format!("code rate {rate} not in (0, 1]")));
    }
    Ok((1.0 / (2.0 * rate * 10f64.powf(ebn0_db / 10.0))).sqrt())
}

/// Modulates `bits` and adds i.i.d. `N(0, sigma^2)` noise.
pub fn transmit<R: Rng + ?Sized>(bits: &[u8], sigma: f64, rng: &mut R) -> Vec<f64> {
    bits.iter()
        .map(|&b| {
            let s = if b & 1 == 0 { 1.0 } else { -1.0 };
            let noise: f64 = rng.sample(StandardNormal);
            s + sigma * noise
        })
        .collect()
}

/// Decoder input costs, one per code bit.
#[derive(Debug, Clone, PartialEq)]
pub enum LlrVector {
    Double(Vec<f64>),
    Fixed(Vec<FixedValue>),
}

impl LlrVector {
    pub fn len(&self) -> usize {
        match self {
            LlrVector::Double(v) => v.len(),
            LlrVector::Fixed(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Real values of the entries.
    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            LlrVector::Double(v) => v.clone(),
            LlrVector::Fixed(v) => v.iter().map(|x| x.to_f64()).collect(),
        }
    }
}

/// Which arithmetic the LLRs are prepared for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LlrProfile {
    Double,
    Fixed(QFormat),
}

/// Clamps `y` to `+-S` with `S = 1 + a * sigma` and scales the saturation
/// level to the largest LLR magnitude: `1.0` in double precision, the top
/// mantissa of the format in fixed point.
pub fn llr_quantize(y: &[f64], sigma: f64, saturation_a: f64, profile: LlrProfile) -> LlrVector {
    let s = 1.0 + saturation_a * sigma;
    let normalized = y.iter().map(|&yi| yi.clamp(-s, s) / s);
    match profile {
        LlrProfile::Double => LlrVector::Double(normalized.collect()),
        LlrProfile::Fixed(fmt) => {
            let top = fmt.max_raw() as f64;
            LlrVector::Fixed(
                normalized
                    .map(|g| FixedValue::from_raw((g * top).round() as i64, fmt))
                    .collect(),
            )
        }
    }
}

/// Unsaturated channel LLRs `2 y / sigma^2`, the input belief propagation
/// expects.
pub fn channel_llrs(y: &[f64], sigma: f64) -> Vec<f64> {
    let scale = 2.0 / (sigma * sigma);
    y.iter().map(|&yi| scale * yi).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sigma_examples() {
        assert!((sigma_from_ebn0(3.0, 0.5).unwrap() - 0.70795).abs() < 1e-5);
        assert!((sigma_from_ebn0(0.0, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((sigma_from_ebn0(3.0, 0.4).unwrap() - 0.791507).abs() < 1e-6);
        assert!(sigma_from_ebn0(3.0, 0.0).is_err());
        assert!(sigma_from_ebn0(3.0, 1.5).is_err());
    }

    #[test]
    fn noiseless_transmission() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert_eq!(transmit(&[0, 0, 0], 0.0, &mut rng), vec![1.0; 3]);
        assert_eq!(transmit(&[0, 1], 0.0, &mut rng), vec![1.0, -1.0]);
    }

    #[test]
    fn transmission_is_reproducible() {
        let a = transmit(&[0; 16], 0.8, &mut ChaCha8Rng::seed_from_u64(5));
        let b = transmit(&[0; 16], 0.8, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
    }

    #[test]
    fn noise_statistics() {
        let n = 1_000_000;
        let sigma = 0.7;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let bits: Vec<u8> = (0..n).map(|i| (i % 2) as u8).collect();
        let y = transmit(&bits, sigma, &mut rng);
        let noise: Vec<f64> = y
            .iter()
            .zip(&bits)
            .map(|(&yi, &b)| yi - if b == 0 { 1.0 } else { -1.0 })
            .collect();
        let mean = noise.iter().sum::<f64>() / n as f64;
        let var = noise.iter().map(|e| (e - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let s2 = sigma * sigma;
        assert!(mean.abs() < 3.0 * sigma / (n as f64).sqrt(), "mean {mean}");
        // standard error of the sample variance is sigma^2 sqrt(2 / (n - 1))
        assert!((var - s2).abs() < 3.0 * s2 * (2.0 / (n - 1) as f64).sqrt(), "var {var}");
    }

    #[test]
    fn llr_boundaries() {
        let sigma = 0.5;
        let s = 1.5;
        let fixed = llr_quantize(&[s, 0.0, -2.0 * s], sigma, 1.0, LlrProfile::Fixed(table::LLR));
        let LlrVector::Fixed(v) = fixed else { panic!() };
        assert_eq!(v.iter().map(|x| x.raw()).collect::<Vec<_>>(), vec![127, 0, -127]);
        let double = llr_quantize(&[s, 0.0, -2.0 * s], sigma, 1.0, LlrProfile::Double);
        assert_eq!(double, LlrVector::Double(vec![1.0, 0.0, -1.0]));
    }

    #[test]
    fn llrs_are_odd_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut y: Vec<f64> = (0..2000).map(|_| rng.gen_range(-3.0..3.0)).collect();
        y.sort_by(f64::total_cmp);
        let neg: Vec<f64> = y.iter().map(|v| -v).collect();
        for profile in [LlrProfile::Double, LlrProfile::Fixed(table::LLR)] {
            let a = llr_quantize(&y, 0.8, 1.0, profile).to_f64();
            let b = llr_quantize(&neg, 0.8, 1.0, profile).to_f64();
            assert!(a.iter().zip(&b).all(|(x, y)| *x == -*y));
            assert!(a.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn config_validation() {
        assert!(ChannelConfig::new(2.0, 0.5).validate().is_ok());
        assert!(ChannelConfig::new(2.0, 0.0).validate().is_err());
        let mut c = ChannelConfig::new(2.0, 0.5);
        c.saturation_a = 0.0;
        assert!(c.validate().is_err());
        assert!((c.saturation(0.5) - 1.0).abs() < 1e-15);
    }
}
