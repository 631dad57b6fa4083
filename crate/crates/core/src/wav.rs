//! 16-bit PCM mono WAV output.

use std::path::Path;

use crate::error::{Error, Result};

/// −1 dBFS as a linear amplitude.
pub const DEFAULT_PEAK: f64 = 0.891;

/// Scales `samples` so that the largest magnitude equals `peak`. Silence is
/// returned unchanged.
pub fn peak_normalize(samples: &[f64], peak: f64) -> Vec<f64> {
    let max = samples.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max == 0.0 {
        return samples.to_vec();
    }
    let g = peak / max;
    samples.iter().map(|x| x * g).collect()
}

/// Quantizes to i16 after peak normalization. `peak` must lie in (0, 1].
pub fn to_pcm16(samples: &[f64], peak: f64) -> Vec<i16> {
    peak_normalize(samples, peak)
        .iter()
        .map(|x| (x * f64::from(i16::MAX)).round().clamp(-32767.0, 32767.0) as i16)
        .collect()
}

pub fn write_wav(path: &Path, samples: &[f64], sample_rate: u32, peak: f64) -> Result<()> {
    if samples.is_empty() {
        return Err(Error::invalid("cannot write an empty signal"));
    }
    if !(peak > 0.0 && peak <= 1.0) {
        return Err(Error::invalid(format!("normalization peak must be in (0, 1], got {peak}")));
    }
    if let Some(bad) = samples.iter().find(|x| !x.is_finite()) {
        return Err(Error::invalid(format!("non-finite sample {bad}")));
    }
    let spec = hound::WavSpec {
        channels: 1,
        sample_rate,
        bits_per_sample: 16,
        sample_format: hound::SampleFormat::Int,
    };
    let mut writer = hound::WavWriter::create(path, spec)?;
    {
        let mut w = writer.get_i16_writer(samples.len() as u32);
        for s in to_pcm16(samples, peak) {
            w.write_sample(s);
        }
        w.flush()?;
    }
    writer.finalize()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn one_second_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("a.wav");
        let x: Vec<f64> = (0..2015).map(|i| (i as f64 * 0.1).sin()).collect();
        write_wav(&path, &x, 2015, DEFAULT_PEAK).unwrap();
        let r = hound::WavReader::open(&path).unwrap();
        assert_eq!(r.spec().sample_rate, 2015);
        assert_eq!(r.spec().channels, 1);
        assert_eq!(r.spec().bits_per_sample, 16);
        assert_eq!(r.duration() as f64 / 2015.0, 1.0);
    }

    #[test]
    fn full_scale_sine_peak() {
        let x: Vec<f64> = (0..400).map(|i| (2.0 * PI * i as f64 / 40.0).sin()).collect();
        let q = to_pcm16(&x, DEFAULT_PEAK);
        let peak = q.iter().map(|s| s.unsigned_abs()).max().unwrap();
        assert_eq!(peak as f64, (0.891f64 * 32767.0).round());
    }

    #[test]
    fn loud_input_never_clips() {
        let x = vec![5.0, -40.0, 12.0];
        let q = to_pcm16(&x, 1.0);
        assert_eq!(q[1], -32767);
    }

    #[test]
    fn silence_and_empty() {
        assert_eq!(to_pcm16(&[0.0; 8], DEFAULT_PEAK), vec![0; 8]);
        let dir = tempfile::tempdir().unwrap();
        assert!(write_wav(&dir.path().join("e.wav"), &[], 2015, DEFAULT_PEAK).is_err());
        write_wav(&dir.path().join("z.wav"), &[0.0; 10], 2015, DEFAULT_PEAK).unwrap();
    }
}
