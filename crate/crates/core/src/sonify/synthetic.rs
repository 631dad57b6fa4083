use rand::Rng;

use super::spectrum::{SpectrumFile, SpectrumSeries};
use super::transform::phase_rng;
use crate::error::{Error, Result};

/// A resonance-frequency jump: from `file_index` onwards the peak centre is
/// offset by `bin_shift`, decaying linearly back to zero over
/// `relaxation_files` files (`0` keeps the shift forever).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchSpec {
    pub file_index: usize,
    pub bin_shift: f64,
    pub relaxation_files: usize,
}

impl SwitchSpec {
    fn offset(&self, file: usize) -> f64 {
        if file < self.file_index {
            return 0.0;
        }
        if self.relaxation_files == 0 {
            return self.bin_shift;
        }
        let elapsed = (file - self.file_index) as f64;
        self.bin_shift * (1.0 - elapsed / self.relaxation_files as f64).max(0.0)
    }
}

/// Stand-in for measured drumhead spectra: a Lorentzian on a jittered flat
/// noise floor.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub n_files: usize,
    pub points_per_file: usize,
    pub bin_spacing: f64,
    pub peak_center_bin: f64,
    /// Half width at half maximum, in bins.
    pub peak_linewidth_bins: f64,
    pub peak_amp: f64,
    pub noise_floor_amp: f64,
    /// Relative uniform jitter applied to the floor, per bin and file.
    pub floor_jitter: f64,
    pub switches: Vec<SwitchSpec>,
    pub seed: u64,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            n_files: 200,
            points_per_file: 4095,
            bin_spacing: 6.706,
            peak_center_bin: bin_for_audio_frequency(470.0, 4095, 2015.0),
            peak_linewidth_bins: 8.0,
            peak_amp: 1.0,
            noise_floor_amp: 0.05,
            floor_jitter: 0.05,
            switches: Vec::new(),
            seed: 0,
        }
    }
}

impl SyntheticConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_files == 0 {
            return Err(Error::invalid("synthetic series needs at least one file"));
        }
        if self.points_per_file < 2 {
            return Err(Error::invalid("synthetic spectra need at least 2 points"));
        }
        if !(self.bin_spacing > 0.0) {
            return Err(Error::invalid("bin spacing must be positive"));
        }
        if !(self.peak_center_bin >= 0.0 && self.peak_center_bin < self.points_per_file as f64) {
            return Err(Error::invalid(format!(
                "peak centre bin {} outside 0..{}",
                self.peak_center_bin, self.points_per_file
            )));
        }
        if !(self.peak_linewidth_bins > 0.0) {
            return Err(Error::invalid("peak linewidth must be positive"));
        }
        if !(self.peak_amp >= 0.0 && self.noise_floor_amp >= 0.0) {
            return Err(Error::invalid("amplitudes must be non-negative"));
        }
        if !(0.0..=1.0).contains(&self.floor_jitter) {
            return Err(Error::invalid("floor jitter must lie in [0, 1]"));
        }
        Ok(())
    }

    pub fn center_at(&self, file: usize) -> f64 {
        self.peak_center_bin + self.switches.iter().map(|s| s.offset(file)).sum::<f64>()
    }
}

/// Spectral bin that lands on `audio_hz` once `points_per_file` bins are
/// Hermitian-extended to `2M − 1` samples and played at `sample_rate`.
pub fn bin_for_audio_frequency(audio_hz: f64, points_per_file: usize, sample_rate: f64) -> f64 {
    audio_hz * (2 * points_per_file - 1) as f64 / sample_rate
}

pub fn generate_synthetic(cfg: &SyntheticConfig) -> Result<SpectrumSeries> {
    cfg.validate()?;
    let m = cfg.points_per_file;
    let mid = (m - 1) as f64 / 2.0;
    let freqs: Vec<f64> = (0..m).map(|k| (k as f64 - mid) * cfg.bin_spacing).collect();
    let files = (0..cfg.n_files)
        .map(|i| {
            // Streams offset past any phase stream of the same seed.
            let mut rng = phase_rng(cfg.seed, usize::MAX - i);
            let center = cfg.center_at(i);
            let amps = (0..m)
                .map(|k| {
                    let floor = if cfg.floor_jitter > 0.0 {
                        cfg.noise_floor_amp * (1.0 + cfg.floor_jitter * rng.gen_range(-1.0..=1.0))
                    } else {
                        cfg.noise_floor_amp
                    };
                    let x = (k as f64 - center) / cfg.peak_linewidth_bins;
                    floor + cfg.peak_amp / (1.0 + x * x)
                })
                .collect();
            SpectrumFile {
                freqs: freqs.clone(),
                amps,
                index: i,
            }
        })
        .collect();
    SpectrumSeries::new(files)
}
