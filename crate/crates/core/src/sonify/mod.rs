//! Sonification of voltage-vs-frequency spectra.
//!
//! Pipeline: moving average over files → noise-floor subtraction → random
//! phases → Hermitian extension → inverse DFT → real part → concatenation →
//! bandpass → WAV. Spectrograms and a frequency-switch detector support
//! inspection of the rendered audio.

mod filter;
mod physics;
mod pipeline;
mod spectrogram;
mod spectrum;
mod synthetic;
mod transform;

pub use filter::{bandpass, design_bandpass, resample, FirFilter, DEFAULT_STOPBAND_DB, DEFAULT_TRANSITION_HZ};
pub use physics::{thermal_occupation, BOLTZMANN, PLANCK};
pub use pipeline::{plan, sonify, SonifyConfig, SonifyPlan};
pub use spectrogram::{
    detect_frequency_switch, spectrogram, DEFAULT_HOP, DEFAULT_WINDOW, write_events_csv, SpectrogramData, SwitchDetector,
    SwitchEvent,
};
pub use spectrum::{
    load_spectra, moving_average, subtract_noise_floor, write_spectra, ColumnMap, LoadOptions,
    NoiseFloorRange, SpectrumFile, SpectrumSeries,
};
pub use synthetic::{bin_for_audio_frequency, generate_synthetic, SwitchSpec, SyntheticConfig};
pub use transform::{
    assign_random_phases, hermitian_extend, inverse_dft, phase_rng, real_signal, ComplexSpectrum,
    InverseDft, TimeSeries,
};
