use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64;
use rand::distributions::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{Fft, FftPlanner};

use super::spectrum::SpectrumFile;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSpectrum {
    pub values: Vec<Complex64>,
}

impl ComplexSpectrum {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub samples: Vec<f64>,
    pub sample_rate: f64,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, sample_rate: f64) -> Result<Self> {
        if !(sample_rate > 0.0) || !sample_rate.is_finite() {
            return Err(Error::invalid(format!("sample rate must be positive, got {sample_rate}")));
        }
        if samples.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("time series contains non-finite samples"));
        }
        Ok(TimeSeries {
            samples,
            sample_rate,
        })
    }

    pub fn duration_s(&self) -> f64 {
        self.samples.len() as f64 / self.sample_rate
    }
}

/// Phase stream for spectrum file `index`: independent of processing order.
pub fn phase_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Multiplies each amplitude by `e^{iφ}`, φ uniform on the open interval
/// (0, 2π).
pub fn assign_random_phases<R: Rng + ?Sized>(spectrum: &SpectrumFile, rng: &mut R) -> ComplexSpectrum {
    let values = spectrum
        .amps
        .iter()
        .map(|&a| {
            let u: f64 = rng.sample(Open01);
            Complex64::from_polar(a, TAU * u)
        })
        .collect();
    ComplexSpectrum { values }
}

/// `[X0, …, X(M−1), conj X(M−1), …, conj X1]`, length `2M − 1`.
pub fn hermitian_extend(cs: &ComplexSpectrum) -> Result<ComplexSpectrum> {
    let m = cs.len();
    if m == 0 {
        return Err(Error::invalid("cannot extend an empty spectrum"));
    }
    let mut values = Vec::with_capacity(2 * m - 1);
    values.extend_from_slice(&cs.values);
    values.extend(cs.values[1..].iter().rev().map(|v| v.conj()));
    Ok(ComplexSpectrum { values })
}

/// Inverse DFT `x[n] = (1/L)·Σ X[k]·e^{+2πikn/L}` with a cached plan.
#[derive(Clone)]
pub struct InverseDft {
    fft: Arc<dyn Fft<f64>>,
    len: usize,
}

impl InverseDft {
    pub fn new(len: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_inverse(len);
        InverseDft { fft, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn apply(&self, input: &[Complex64]) -> Result<Vec<Complex64>> {
        if input.len() != self.len {
            return Err(Error::invalid(format!(
                "inverse DFT planned for {} points, got {}",
                self.len,
                input.len()
            )));
        }
        let mut buf = input.to_vec();
        self.fft.process(&mut buf);
        let scale = 1.0 / self.len as f64;
        buf.iter_mut().for_each(|v| *v *= scale);
        Ok(buf)
    }
}

pub fn inverse_dft(cs: &ComplexSpectrum) -> Vec<Complex64> {
    if cs.is_empty() {
        return Vec::new();
    }
    InverseDft::new(cs.len())
        .apply(&cs.values)
        .expect("plan length matches input")
}

pub fn real_signal(x: &[Complex64]) -> Vec<f64> {
    x.iter().map(|v| v.re).collect()
}
