use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::transform::TimeSeries;
use crate::error::{Error, Result};

pub const DEFAULT_TRANSITION_HZ: f64 = 25.0;
pub const DEFAULT_STOPBAND_DB: f64 = 40.0;

/// Zeroth-order modified Bessel function of the first kind (power series).
fn bessel_i0(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > sum * 1e-17 {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

fn kaiser_beta(atten_db: f64) -> f64 {
    if atten_db > 50.0 {
        0.1102 * (atten_db - 8.7)
    } else if atten_db > 21.0 {
        0.5842 * (atten_db - 21.0).powf(0.4) + 0.07886 * (atten_db - 21.0)
    } else {
        0.0
    }
}

/// Kaiser window evaluated at offset `t` from the centre, half-length `half`.
fn kaiser(t: f64, half: f64, beta: f64) -> f64 {
    let r = t / half;
    if r.abs() > 1.0 {
        return 0.0;
    }
    bessel_i0(beta * (1.0 - r * r).sqrt()) / bessel_i0(beta)
}

fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// Linear-phase FIR filter with an odd number of taps.
#[derive(Debug, Clone, PartialEq)]
pub struct FirFilter {
    taps: Vec<f64>,
}

impl FirFilter {
    pub fn taps(&self) -> &[f64] {
        &self.taps
    }

    pub fn group_delay(&self) -> usize {
        (self.taps.len() - 1) / 2
    }

    /// Magnitude response at `freq` for sample rate `fs`.
    pub fn response(&self, freq: f64, fs: f64) -> f64 {
        let w = 2.0 * PI * freq / fs;
        self.taps
            .iter()
            .enumerate()
            .map(|(k, h)| Complex64::from_polar(*h, -w * k as f64))
            .sum::<Complex64>()
            .norm()
    }

    /// "Same"-length convolution: zero padding at both ends and the group
    /// delay removed, so output sample `n` lines up with input sample `n`.
    pub fn apply_same(&self, x: &[f64]) -> Vec<f64> {
        let d = self.group_delay() as isize;
        let n = x.len() as isize;
        let taps = &self.taps;
        let mut y = vec![0.0; x.len()];
        y.par_chunks_mut(8192).enumerate().for_each(|(ci, chunk)| {
            let base = (ci * 8192) as isize;
            for (j, out) in chunk.iter_mut().enumerate() {
                let i = base + j as isize;
                // y[i] = Σ_k h[k]·x[i + d − k]
                let k_lo = (i + d - (n - 1)).max(0) as usize;
                let k_hi = (i + d).min(taps.len() as isize - 1);
                if k_hi < k_lo as isize {
                    continue;
                }
                let mut acc = 0.0;
                for k in k_lo..=k_hi as usize {
                    acc += taps[k] * x[(i + d) as usize - k];
                }
                *out = acc;
            }
        });
        y
    }
}

/// Kaiser-windowed sinc bandpass. `transition_hz` is the full width of each
/// transition band; the attenuation target sets both the Kaiser β and the
/// tap count. Gain is normalised to 1 at the band centre.
pub fn design_bandpass(low: f64, high: f64, fs: f64, transition_hz: f64, atten_db: f64) -> Result<FirFilter> {
    if !(fs > 0.0) {
        return Err(Error::invalid(format!("sample rate must be positive, got {fs}")));
    }
    if !(low >= 0.0 && low < high && high < fs / 2.0) {
        return Err(Error::invalid(format!(
            "band ({low}, {high}) Hz must satisfy 0 <= low < high < {}",
            fs / 2.0
        )));
    }
    if !(transition_hz > 0.0) || !(atten_db > 0.0) {
        return Err(Error::invalid("transition width and attenuation must be positive"));
    }
    let dw = 2.0 * PI * transition_hz / fs;
    let mut len = ((atten_db - 7.95) / (2.285 * dw)).ceil().max(1.0) as usize + 1;
    if len.is_multiple_of(2) {
        len += 1;
    }
    let beta = kaiser_beta(atten_db);
    let half = (len - 1) as f64 / 2.0;
    let (fl, fh) = (low / fs, high / fs);
    let mut taps: Vec<f64> = (0..len)
        .map(|n| {
            let t = n as f64 - half;
            let ideal = 2.0 * fh * sinc(2.0 * fh * t) - 2.0 * fl * sinc(2.0 * fl * t);
            ideal * kaiser(t, half, beta)
        })
        .collect();
    let filter = FirFilter { taps: taps.clone() };
    let g = filter.response((low + high) / 2.0, fs);
    taps.iter_mut().for_each(|h| *h /= g);
    Ok(FirFilter { taps })
}

/// Bandpass with the default 25 Hz transition and 40 dB stopband.
pub fn bandpass(ts: &TimeSeries, low: f64, high: f64) -> Result<TimeSeries> {
    let f = design_bandpass(low, high, ts.sample_rate, DEFAULT_TRANSITION_HZ, DEFAULT_STOPBAND_DB)?;
    Ok(TimeSeries {
        samples: f.apply_same(&ts.samples),
        sample_rate: ts.sample_rate,
    })
}

// Half-width of the interpolation kernel in input samples (at unity ratio).
const RESAMPLE_HALF_WIDTH: f64 = 32.0;
const RESAMPLE_BETA: f64 = 8.0;

/// Band-limited resampling with a symmetric Kaiser-windowed sinc kernel
/// evaluated at each output phase. Output sample `j` sits at input time
/// `j·fs_in/fs_out`.
pub fn resample(ts: &TimeSeries, target_rate: f64) -> Result<TimeSeries> {
    if !(target_rate > 0.0) {
        return Err(Error::invalid(format!("target rate must be positive, got {target_rate}")));
    }
    if ts.samples.is_empty() {
        return TimeSeries::new(Vec::new(), target_rate);
    }
    let ratio = ts.sample_rate / target_rate;
    // Cutoff in cycles per input sample, just under the lower Nyquist.
    let cutoff = 0.5 * 0.95 * (1.0f64).min(1.0 / ratio);
    let half = RESAMPLE_HALF_WIDTH * (1.0f64).max(ratio);
    let n_in = ts.samples.len();
    let n_out = (((n_in - 1) as f64) / ratio).floor() as usize + 1;
    let x = &ts.samples;
    let samples: Vec<f64> = (0..n_out)
        .into_par_iter()
        .map(|j| {
            let t = j as f64 * ratio;
            let lo = ((t - half).ceil().max(0.0)) as usize;
            let hi = ((t + half).floor() as usize).min(n_in - 1);
            (lo..=hi)
                .map(|i| {
                    let d = t - i as f64;
                    x[i] * 2.0 * cutoff * sinc(2.0 * cutoff * d) * kaiser(d, half, RESAMPLE_BETA)
                })
                .sum()
        })
        .collect();
    TimeSeries::new(samples, target_rate)
}
