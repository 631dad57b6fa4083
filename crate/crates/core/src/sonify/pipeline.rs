use rayon::prelude::*;

use super::filter::{bandpass, resample};
use super::spectrum::{moving_average, subtract_noise_floor, NoiseFloorRange, SpectrumSeries};
use super::transform::{
    assign_random_phases, hermitian_extend, phase_rng, real_signal, InverseDft, TimeSeries,
};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SonifyConfig {
    /// Moving-average length in files.
    pub window: usize,
    pub noise_floor: NoiseFloorRange,
    pub sample_rate: f64,
    /// Bandpass cutoffs in Hz; `None` skips filtering.
    pub band: Option<(f64, f64)>,
    pub seed: u64,
    /// Optional output rate for players that reject unusual rates.
    pub resample_to: Option<f64>,
}

impl Default for SonifyConfig {
    fn default() -> Self {
        SonifyConfig {
            window: 10,
            noise_floor: NoiseFloorRange::default(),
            sample_rate: 2015.0,
            band: Some((400.0, 550.0)),
            seed: 0,
            resample_to: None,
        }
    }
}

impl SonifyConfig {
    pub fn validate(&self, points_per_file: usize) -> Result<()> {
        if self.window == 0 {
            return Err(Error::invalid("moving-average window must be at least 1"));
        }
        if !(self.sample_rate > 0.0) {
            return Err(Error::invalid("sample rate must be positive"));
        }
        if let Some((lo, hi)) = self.band {
            if !(lo >= 0.0 && lo < hi && hi < self.sample_rate / 2.0) {
                return Err(Error::invalid(format!(
                    "band ({lo}, {hi}) Hz must satisfy 0 <= low < high < {}",
                    self.sample_rate / 2.0
                )));
            }
        }
        self.noise_floor.check(points_per_file)
    }
}

/// Renders a spectrum series to audio. Each averaged file becomes
/// `2M − 1` samples; files are independent and processed in parallel, with
/// phases drawn from a per-file stream so the output does not depend on
/// scheduling.
pub fn sonify(series: &SpectrumSeries, cfg: &SonifyConfig) -> Result<TimeSeries> {
    cfg.validate(series.points_per_file())?;
    let averaged = moving_average(series, cfg.window)?;
    let idft = InverseDft::new(2 * series.points_per_file() - 1);
    let chunks = averaged
        .files()
        .par_iter()
        .enumerate()
        .map(|(n, file)| {
            let clean = subtract_noise_floor(file, cfg.noise_floor)?;
            let phased = assign_random_phases(&clean, &mut phase_rng(cfg.seed, n));
            let full = hermitian_extend(&phased)?;
            Ok(real_signal(&idft.apply(&full.values)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ts = TimeSeries::new(chunks.concat(), cfg.sample_rate)?;
    if let Some((lo, hi)) = cfg.band {
        ts = bandpass(&ts, lo, hi)?;
    }
    if let Some(rate) = cfg.resample_to {
        ts = resample(&ts, rate)?;
    }
    Ok(ts)
}

/// Output geometry of a sonification run, computed without rendering.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SonifyPlan {
    pub n_files: usize,
    pub window: usize,
    pub averaged_files: usize,
    pub points_per_file: usize,
    pub samples_per_file: usize,
    pub total_samples: usize,
    pub sample_rate: f64,
}

impl SonifyPlan {
    pub fn per_file_duration_s(&self) -> f64 {
        self.samples_per_file as f64 / self.sample_rate
    }

    pub fn total_duration_s(&self) -> f64 {
        self.total_samples as f64 / self.sample_rate
    }

    /// Audio time at which raw input file `file` (possibly fractional)
    /// dominates the moving average: averaged file `n` is centred on raw
    /// file `n + (window − 1)/2`.
    pub fn audio_time_of_raw_file(&self, file: f64) -> f64 {
        (file - (self.window as f64 - 1.0) / 2.0) * self.per_file_duration_s()
    }
}

pub fn plan(n_files: usize, points_per_file: usize, window: usize, sample_rate: f64) -> Result<SonifyPlan> {
    if window == 0 || window > n_files {
        return Err(Error::invalid(format!("window {window} must be in 1..={n_files}")));
    }
    if points_per_file < 2 {
        return Err(Error::invalid("need at least 2 points per file"));
    }
    if !(sample_rate > 0.0) {
        return Err(Error::invalid("sample rate must be positive"));
    }
    let averaged_files = n_files - window + 1;
    let samples_per_file = 2 * points_per_file - 1;
    Ok(SonifyPlan {
        n_files,
        window,
        averaged_files,
        points_per_file,
        samples_per_file,
        total_samples: averaged_files * samples_per_file,
        sample_rate,
    })
}
