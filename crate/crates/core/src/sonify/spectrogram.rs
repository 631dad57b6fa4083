use std::f64::consts::TAU;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use image::{Rgb, RgbImage};
use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use super::transform::TimeSeries;
use crate::error::{Error, Result};

pub const DEFAULT_WINDOW: usize = 1024;
pub const DEFAULT_HOP: usize = 256;

/// Magnitude STFT cropped to a frequency band. `magnitudes[t][f]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrogramData {
    pub times: Vec<f64>,
    pub freqs: Vec<f64>,
    pub magnitudes: Vec<Vec<f64>>,
    pub window_len: usize,
    pub hop: usize,
}

impl SpectrogramData {
    pub fn bin_width(&self, sample_rate: f64) -> f64 {
        sample_rate / self.window_len as f64
    }

    /// Frequency of the largest magnitude in every frame.
    pub fn frame_peaks(&self) -> Vec<f64> {
        self.magnitudes.iter().map(|row| self.freqs[argmax(row)]).collect()
    }

    /// Peak of the time-averaged magnitude.
    pub fn dominant_frequency(&self) -> Option<f64> {
        if self.magnitudes.is_empty() || self.freqs.is_empty() {
            return None;
        }
        let mut mean = vec![0.0; self.freqs.len()];
        for row in &self.magnitudes {
            for (m, v) in mean.iter_mut().zip(row) {
                *m += v;
            }
        }
        Some(self.freqs[argmax(&mean)])
    }

    /// First row: `time_s` followed by the frequency axis; then one row per
    /// frame with its time and magnitudes.
    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
        let mut w = BufWriter::new(file);
        let io = |e| Error::io(path, e);
        write!(w, "time_s").map_err(io)?;
        for f in &self.freqs {
            write!(w, ",{f:.4}").map_err(io)?;
        }
        writeln!(w).map_err(io)?;
        for (t, row) in self.times.iter().zip(&self.magnitudes) {
            write!(w, "{t:.6}").map_err(io)?;
            for v in row {
                write!(w, ",{v:.6e}").map_err(io)?;
            }
            writeln!(w).map_err(io)?;
        }
        w.flush().map_err(io)
    }

    /// Renders time left-to-right and frequency bottom-to-top. Long
    /// recordings are max-pooled to at most `max_width` columns.
    pub fn write_png(&self, path: &Path, max_width: usize) -> Result<()> {
        if self.magnitudes.is_empty() || self.freqs.is_empty() {
            return Err(Error::invalid("cannot render an empty spectrogram"));
        }
        let frames = self.magnitudes.len();
        let width = frames.min(max_width.max(1));
        let height = self.freqs.len();
        let per_col = frames.div_ceil(width);
        let peak = self
            .magnitudes
            .iter()
            .flatten()
            .fold(0.0f64, |m, &v| m.max(v));
        let mut img = RgbImage::new(width as u32, height as u32);
        for x in 0..width {
            let rows = &self.magnitudes[(x * per_col).min(frames)..((x + 1) * per_col).min(frames)];
            for y in 0..height {
                let v = rows.iter().map(|r| r[y]).fold(0.0f64, f64::max);
                let level = if peak > 0.0 { v / peak } else { 0.0 };
                img.put_pixel(x as u32, (height - 1 - y) as u32, colormap(level));
            }
        }
        img.save(path)?;
        Ok(())
    }
}

fn argmax(row: &[f64]) -> usize {
    row.iter()
        .enumerate()
        .fold((0, f64::MIN), |(bi, bv), (i, &v)| if v > bv { (i, v) } else { (bi, bv) })
        .0
}

// black → purple → orange → pale yellow
fn colormap(level: f64) -> Rgb<u8> {
    const STOPS: [(f64, [f64; 3]); 4] = [
        (0.0, [0.0, 0.0, 4.0]),
        (0.35, [120.0, 28.0, 109.0]),
        (0.7, [237.0, 105.0, 37.0]),
        (1.0, [252.0, 255.0, 164.0]),
    ];
    let l = level.clamp(0.0, 1.0);
    let i = STOPS.iter().rposition(|(s, _)| *s <= l).unwrap_or(0).min(STOPS.len() - 2);
    let (s0, c0) = STOPS[i];
    let (s1, c1) = STOPS[i + 1];
    let t = (l - s0) / (s1 - s0);
    Rgb(std::array::from_fn(|k| (c0[k] + t * (c1[k] - c0[k])).round() as u8))
}

/// Hann-windowed magnitude STFT. Frame times are window centres; magnitudes
/// are scaled so a unit-amplitude sinusoid on a bin reads 1.
pub fn spectrogram(ts: &TimeSeries, window_len: usize, hop: usize, fmin: f64, fmax: f64) -> Result<SpectrogramData> {
    if window_len == 0 || hop == 0 {
        return Err(Error::invalid("window length and hop must be at least 1"));
    }
    if window_len > ts.samples.len() {
        return Err(Error::invalid(format!(
            "window of {window_len} samples is longer than the {}-sample signal",
            ts.samples.len()
        )));
    }
    if !(fmin <= fmax) {
        return Err(Error::invalid(format!("empty frequency range {fmin}..{fmax}")));
    }
    let fs = ts.sample_rate;
    let window: Vec<f64> = (0..window_len)
        .map(|n| 0.5 - 0.5 * (TAU * n as f64 / window_len as f64).cos())
        .collect();
    let scale = 2.0 / window.iter().sum::<f64>();
    let bins: Vec<usize> = (0..=window_len / 2)
        .filter(|&k| {
            let f = k as f64 * fs / window_len as f64;
            f >= fmin && f <= fmax
        })
        .collect();
    let freqs = bins.iter().map(|&k| k as f64 * fs / window_len as f64).collect();
    let n_frames = (ts.samples.len() - window_len) / hop + 1;
    let fft = FftPlanner::new().plan_fft_forward(window_len);
    let magnitudes = (0..n_frames)
        .into_par_iter()
        .map(|i| {
            let start = i * hop;
            let mut buf: Vec<Complex64> = ts.samples[start..start + window_len]
                .iter()
                .zip(&window)
                .map(|(x, w)| Complex64::new(x * w, 0.0))
                .collect();
            fft.process(&mut buf);
            bins.iter().map(|&k| buf[k].norm() * scale).collect()
        })
        .collect();
    let times = (0..n_frames)
        .map(|i| (i * hop) as f64 / fs + window_len as f64 / (2.0 * fs))
        .collect();
    Ok(SpectrogramData {
        times,
        freqs,
        magnitudes,
        window_len,
        hop,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchEvent {
    pub time_s: f64,
    pub delta_hz: f64,
}

/// Tracks the dominant frequency and reports abrupt jumps.
///
/// The track is the per-frame argmax after averaging magnitudes over
/// `smooth_frames` neighbouring frames. A frame is an event when it sits at
/// least `jump_threshold_hz` away from the median of the preceding
/// `baseline_frames` and the median of the next `confirm_frames` agrees.
/// After an event the detector skips ahead until the baseline window holds
/// only post-event frames.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchDetector {
    pub jump_threshold_hz: f64,
    pub baseline_frames: usize,
    pub smooth_frames: usize,
    pub confirm_frames: usize,
}

impl Default for SwitchDetector {
    fn default() -> Self {
        SwitchDetector {
            jump_threshold_hz: 15.0,
            baseline_frames: 48,
            smooth_frames: 48,
            confirm_frames: 48,
        }
    }
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / 2.0
    }
}

fn smoothed_track(sg: &SpectrogramData, frames: usize) -> Vec<f64> {
    let n = sg.magnitudes.len();
    let nf = sg.freqs.len();
    if frames <= 1 {
        return sg.frame_peaks();
    }
    // Prefix sums over time for each bin.
    let mut prefix = vec![vec![0.0; nf]; n + 1];
    for (t, row) in sg.magnitudes.iter().enumerate() {
        let (done, rest) = prefix.split_at_mut(t + 1);
        for ((out, prev), m) in rest[0].iter_mut().zip(&done[t]).zip(row) {
            *out = prev + m;
        }
    }
    (0..n)
        .map(|t| {
            let lo = t.saturating_sub(frames / 2);
            let hi = (lo + frames).min(n);
            let sums: Vec<f64> = (0..nf).map(|f| prefix[hi][f] - prefix[lo][f]).collect();
            sg.freqs[argmax(&sums)]
        })
        .collect()
}

pub fn detect_frequency_switch(sg: &SpectrogramData, detector: &SwitchDetector) -> Vec<SwitchEvent> {
    let mut events = Vec::new();
    if sg.freqs.is_empty() || sg.magnitudes.is_empty() {
        return events;
    }
    let track = smoothed_track(sg, detector.smooth_frames);
    let b = detector.baseline_frames.max(1);
    let c = detector.confirm_frames.max(1);
    let thr = detector.jump_threshold_hz;
    let mut i = b;
    while i < track.len() {
        let base = median(&track[i - b..i]);
        let delta = track[i] - base;
        if delta.abs() >= thr {
            let ahead = median(&track[i..(i + c).min(track.len())]) - base;
            if ahead.signum() == delta.signum() && ahead.abs() >= thr {
                events.push(SwitchEvent {
                    time_s: sg.times[i],
                    delta_hz: delta,
                });
                i += b.max(c);
                continue;
            }
        }
        i += 1;
    }
    events
}

pub fn write_events_csv(path: &Path, events: &[SwitchEvent]) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    let io = |e| Error::io(path, e);
    writeln!(w, "time_s,delta_hz").map_err(io)?;
    for e in events {
        writeln!(w, "{:.3},{:.3}", e.time_s, e.delta_hz).map_err(io)?;
    }
    w.flush().map_err(io)
}
