//! Leggett-Garg tests on a simulated qubit, sonification of spectral
//! measurement series, and Shepard-tone music driven by measurement records.
//!
//! The crate is split into three engines that share a WAV writer and an
//! error type:
//!
//! - [`lg`]: single-qubit Rx simulation, shot sampling, two-time correlation
//!   estimates and the `K = C21 + C32 - C31` statistic.
//! - [`sonify`]: voltage-vs-frequency spectra to audio via random phases and
//!   an inverse DFT, bandpass filtering, spectrograms and switch detection.
//! - [`qmusic`]: measurement records to three-voice Shepard-tone movements on
//!   a seven-note scale ring.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod lg;
pub mod qmusic;
pub mod sonify;
pub mod wav;

pub use error::{Error, Result};
