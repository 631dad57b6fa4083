use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::scale::ScaleRing;
use super::shepard::{render_voice, ShepardParams};
use super::walk::{walk_from_bits, NoteWalk};
use crate::error::{Error, Result};
use crate::wav::{peak_normalize, DEFAULT_PEAK};

pub const DEFAULT_GAP_S: f64 = 2.0;

/// Three simultaneous walks (C21, C32, C31 records) labelled by their K.
#[derive(Debug, Clone, PartialEq)]
pub struct Movement {
    pub k_label: f64,
    pub walks: [NoteWalk; 3],
}

impl Movement {
    pub fn from_bits(k_label: f64, bits: [&[u8]; 3]) -> Result<Self> {
        let [a, b, c] = bits;
        Ok(Movement {
            k_label,
            walks: [walk_from_bits(a)?, walk_from_bits(b)?, walk_from_bits(c)?],
        })
    }
}

/// Sample-wise sum, zero-padded to the longest input.
pub fn mix_raw(voices: &[&[f64]]) -> Vec<f64> {
    let len = voices.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![0.0; len];
    for v in voices {
        for (o, s) in out.iter_mut().zip(v.iter()) {
            *o += s;
        }
    }
    out
}

/// Mix of the three voices, peak-normalised to −1 dBFS.
pub fn mix_movement(voices: [&[f64]; 3]) -> Vec<f64> {
    peak_normalize(&mix_raw(&voices), DEFAULT_PEAK)
}

/// Renders the three voices in parallel (volumes from `params.volumes`) and
/// mixes them.
pub fn render_movement(movement: &Movement, ring: &ScaleRing, params: &ShepardParams) -> Result<Vec<f64>> {
    let voices = movement
        .walks
        .par_iter()
        .zip(params.volumes.par_iter())
        .map(|(walk, &vol)| render_voice(walk, ring, params, vol))
        .collect::<Result<Vec<_>>>()?;
    Ok(mix_movement([&voices[0], &voices[1], &voices[2]]))
}

/// Playback order: ascending K, or a seeded shuffle.
pub fn movement_order(k_labels: &[f64], shuffle_seed: Option<u64>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..k_labels.len()).collect();
    match shuffle_seed {
        Some(seed) => order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        None => order.sort_by(|&a, &b| k_labels[a].total_cmp(&k_labels[b])),
    }
    order
}

/// Concatenates rendered movements in `order` with `gap_s` of silence
/// between consecutive movements.
pub fn compose(rendered: &[Vec<f64>], order: &[usize], gap_s: f64, rate: f64) -> Result<Vec<f64>> {
    if rendered.is_empty() {
        return Err(Error::invalid("composition needs at least one movement"));
    }
    if !(gap_s >= 0.0) {
        return Err(Error::invalid(format!("gap must be non-negative, got {gap_s}")));
    }
    let mut seen = vec![false; rendered.len()];
    if order.len() != rendered.len() || order.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true)) {
        return Err(Error::invalid("movement order must be a permutation"));
    }
    let gap = (gap_s * rate).round() as usize;
    let mut out = Vec::new();
    for (pos, &i) in order.iter().enumerate() {
        if pos > 0 {
            out.resize(out.len() + gap, 0.0);
        }
        out.extend_from_slice(&rendered[i]);
    }
    Ok(out)
}
