use std::collections::HashMap;
use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use super::scale::{scale_pitch, PitchClass, ScaleRing};
use super::walk::NoteWalk;
use crate::error::{Error, Result};

/// Linear attack, full-level sustain, linear release.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub attack: f64,
    pub sustain: f64,
    pub release: f64,
}

impl Envelope {
    pub fn total(&self) -> f64 {
        self.attack + self.sustain + self.release
    }

    pub fn samples(&self, rate: f64) -> usize {
        (self.total() * rate).round() as usize
    }

    pub fn gain(&self, t: f64) -> f64 {
        if t < 0.0 {
            0.0
        } else if t < self.attack {
            t / self.attack
        } else if t < self.attack + self.sustain {
            1.0
        } else if self.release > 0.0 {
            (1.0 - (t - self.attack - self.sustain) / self.release).max(0.0)
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShepardParams {
    /// Onset spacing and sustain of regular notes, seconds.
    pub note_dur: f64,
    pub attack: f64,
    pub release: f64,
    /// Per-voice volume for the C21, C32 and C31 voices.
    pub volumes: [f64; 3],
    /// MIDI number at the top of the Gaussian loudness curve.
    pub center_midi: f64,
    pub octaves: RangeInclusive<u8>,
    /// Envelope of the closing note each voice ends on.
    pub final_note: Envelope,
    /// Closing-note volume; `None` reuses the voice volume.
    pub final_volume: Option<f64>,
    pub render_rate: f64,
}

impl Default for ShepardParams {
    fn default() -> Self {
        ShepardParams {
            note_dur: 0.15,
            attack: 0.02,
            release: 0.02,
            volumes: [1.0, 1.0, 2.0],
            center_midi: 68.0,
            octaves: 1..=9,
            final_note: Envelope {
                attack: 0.2,
                sustain: 0.7,
                release: 0.5,
            },
            final_volume: Some(1.0),
            render_rate: 44100.0,
        }
    }
}

impl ShepardParams {
    pub fn note_envelope(&self) -> Envelope {
        Envelope {
            attack: self.attack,
            sustain: self.note_dur,
            release: self.release,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let durations = [
            self.note_dur,
            self.final_note.sustain,
        ];
        if durations.iter().any(|d| !(*d > 0.0)) {
            return Err(Error::invalid("note durations must be positive"));
        }
        let ramps = [self.attack, self.release, self.final_note.attack, self.final_note.release];
        if ramps.iter().any(|d| !(*d >= 0.0)) {
            return Err(Error::invalid("attack and release times must be non-negative"));
        }
        if self.octaves.is_empty() {
            return Err(Error::invalid("octave range is empty"));
        }
        if !(self.render_rate > 0.0) {
            return Err(Error::invalid("render rate must be positive"));
        }
        if self.volumes.iter().any(|v| !(*v >= 0.0)) {
            return Err(Error::invalid("voice volumes must be non-negative"));
        }
        Ok(())
    }
}

/// `12·(octave + 1) + pitch class`, so E♭4 is 63.
pub fn midi_number(pc: PitchClass, octave: u8) -> f64 {
    12.0 * (f64::from(octave) + 1.0) + f64::from(pc.semitone())
}

/// Equal-tempered frequency with A4 = 440 Hz.
pub fn midi_frequency(m: f64) -> f64 {
    440.0 * 2f64.powf((m - 69.0) / 12.0)
}

/// Loudness bell curve `2^(−((m − centre)/10.7)²/10)`.
pub fn gaussian_factor(m: f64, center: f64) -> f64 {
    let middle = (m - center) / 10.7;
    2f64.powf(-(middle * middle) / 10.0)
}

/// `30/m^1.5 · volume · gaussian`, the amplitude of one octave partial.
pub fn partial_amplitude(m: f64, volume: f64, center: f64) -> f64 {
    30.0 / m.powf(1.5) * volume * gaussian_factor(m, center)
}

/// One Shepard note: octave-spaced sines under the loudness curve, all
/// shaped by `env`. Partials at or above Nyquist are dropped.
pub fn shepard_note(pc: PitchClass, env: &Envelope, volume: f64, params: &ShepardParams) -> Vec<f64> {
    let rate = params.render_rate;
    let len = env.samples(rate);
    let gains: Vec<f64> = (0..len).map(|n| env.gain(n as f64 / rate)).collect();
    let mut out = vec![0.0; len];
    for octave in params.octaves.clone() {
        let m = midi_number(pc, octave);
        let f = midi_frequency(m);
        if f >= rate / 2.0 {
            continue;
        }
        let amp = partial_amplitude(m, volume, params.center_midi);
        let w = TAU * f / rate;
        for (n, (o, g)) in out.iter_mut().zip(&gains).enumerate() {
            *o += amp * g * (w * n as f64).sin();
        }
    }
    out
}

/// A regular note (attack, `note_dur` sustain, release).
pub fn shepard_tone(pc: PitchClass, params: &ShepardParams, volume: f64) -> Vec<f64> {
    shepard_note(pc, &params.note_envelope(), volume, params)
}

fn onset(step: usize, params: &ShepardParams) -> usize {
    (step as f64 * params.note_dur * params.render_rate).round() as usize
}

/// Samples in a rendered voice of `n_notes` regular notes plus the closing
/// note: the closing onset plus its full envelope, unless a regular note's
/// tail runs longer.
pub fn movement_samples(n_notes: usize, params: &ShepardParams) -> usize {
    let rate = params.render_rate;
    let closing_end = onset(n_notes, params) + params.final_note.samples(rate);
    let last_regular_end = match n_notes {
        0 => 0,
        n => onset(n - 1, params) + params.note_envelope().samples(rate),
    };
    closing_end.max(last_regular_end)
}

/// Notes start every `note_dur`; their envelope tails overlap and add.
pub fn render_voice(walk: &NoteWalk, ring: &ScaleRing, params: &ShepardParams, volume: f64) -> Result<Vec<f64>> {
    params.validate()?;
    let mut out = vec![0.0; movement_samples(walk.len(), params)];
    let env = params.note_envelope();
    let mut cache: HashMap<PitchClass, Vec<f64>> = HashMap::new();
    for (step, &index) in walk.indices().iter().enumerate() {
        let pc = scale_pitch(index, ring);
        let note = cache
            .entry(pc)
            .or_insert_with(|| shepard_note(pc, &env, volume, params));
        let start = onset(step, params);
        for (o, s) in out[start..].iter_mut().zip(note.iter()) {
            *o += s;
        }
    }
    let closing_volume = params.final_volume.unwrap_or(volume);
    let closing = shepard_note(
        scale_pitch(walk.final_index(), ring),
        &params.final_note,
        closing_volume,
        params,
    );
    let start = onset(walk.len(), params);
    for (o, s) in out[start..].iter_mut().zip(&closing) {
        *o += s;
    }
    Ok(out)
}
