use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::state::{prepare_initial, prob_plus, rx_apply, RotationAngle};
use crate::error::{Error, Result};

/// Shots per record set behind the reported K values.
pub const DEFAULT_SHOTS: usize = 500;
/// Shots requested per hardware job in the original circuit script.
pub const HARDWARE_SHOTS: usize = 1024;

/// Which two-time correlation a record set samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalLabel {
    C21,
    C32,
    C31,
}

impl IntervalLabel {
    pub const ALL: [IntervalLabel; 3] = [IntervalLabel::C21, IntervalLabel::C32, IntervalLabel::C31];

    /// Multiple of Δt separating the two measurement times.
    pub fn interval_multiple(self) -> u32 {
        match self {
            IntervalLabel::C21 | IntervalLabel::C32 => 1,
            IntervalLabel::C31 => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            IntervalLabel::C21 => "C21",
            IntervalLabel::C32 => "C32",
            IntervalLabel::C31 => "C31",
        }
    }

    // XORed into the experiment seed so each label gets its own stream.
    fn stream_constant(self) -> u64 {
        match self {
            IntervalLabel::C21 => 0x9E37_79B9_7F4A_7C15,
            IntervalLabel::C32 => 0xBF58_476D_1CE4_E5B9,
            IntervalLabel::C31 => 0x94D0_49BB_1331_11EB,
        }
    }
}

impl fmt::Display for IntervalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IntervalLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "C21" => Ok(IntervalLabel::C21),
            "C32" => Ok(IntervalLabel::C32),
            "C31" => Ok(IntervalLabel::C31),
            _ => Err(Error::invalid(format!("unknown interval label {s:?}"))),
        }
    }
}

/// One prepare→measure shot as a pair of spins.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ShotRecord {
    pub q1: i8,
    pub q2: i8,
}

impl ShotRecord {
    pub fn from_bit(bit: u8) -> Self {
        ShotRecord {
            q1: -1,
            q2: if bit == 0 { -1 } else { 1 },
        }
    }

    pub fn bit(self) -> u8 {
        u8::from(self.q2 == 1)
    }

    pub fn product(self) -> i64 {
        i64::from(self.q1) * i64::from(self.q2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordSet {
    label: IntervalLabel,
    shots: Vec<ShotRecord>,
    seed: Option<u64>,
}

impl RecordSet {
    pub fn new(label: IntervalLabel, shots: Vec<ShotRecord>, seed: Option<u64>) -> Result<Self> {
        if shots.is_empty() {
            return Err(Error::invalid("record set must contain at least one shot"));
        }
        if let Some(bad) = shots.iter().find(|s| s.q1 != -1 || (s.q2 != 1 && s.q2 != -1)) {
            return Err(Error::invalid(format!("malformed shot record {bad:?}")));
        }
        Ok(RecordSet { label, shots, seed })
    }

    pub fn from_bits(label: IntervalLabel, bits: &[u8], seed: Option<u64>) -> Result<Self> {
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::invalid(format!("measured bit must be 0 or 1, got {b}")));
        }
        Self::new(label, bits.iter().map(|&b| ShotRecord::from_bit(b)).collect(), seed)
    }

    pub fn label(&self) -> IntervalLabel {
        self.label
    }

    pub fn interval_multiple(&self) -> u32 {
        self.label.interval_multiple()
    }

    pub fn shots(&self) -> &[ShotRecord] {
        &self.shots
    }

    pub fn len(&self) -> usize {
        self.shots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shots.is_empty()
    }

    /// `None` for record sets imported from hardware.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn bits(&self) -> Vec<u8> {
        self.shots.iter().map(|s| s.bit()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig {
    pub theta: RotationAngle,
    pub n_shots: usize,
    pub seed: u64,
    /// Depolarizing probability applied at readout; emulates hardware loss
    /// of contrast, scaling every correlation by `1 − p`.
    pub noise_p: Option<f64>,
}

impl ExperimentConfig {
    pub fn new(theta: RotationAngle, n_shots: usize, seed: u64) -> Self {
        ExperimentConfig {
            theta,
            n_shots,
            seed,
            noise_p: None,
        }
    }

    pub fn with_noise(mut self, p: f64) -> Self {
        self.noise_p = Some(p);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_shots == 0 {
            return Err(Error::invalid("n_shots must be at least 1"));
        }
        if let Some(p) = self.noise_p {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::invalid(format!("noise_p must lie in [0, 1], got {p}")));
            }
        }
        Ok(())
    }
}

/// Samples one record set. Identical `(config, label)` always yields the
/// same shots.
pub fn run_record_set(config: &ExperimentConfig, label: IntervalLabel) -> Result<RecordSet> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ label.stream_constant());
    let theta = config.theta.scaled(f64::from(label.interval_multiple()));
    // Every shot starts from the same prepared state, so the outcome
    // distribution is fixed for the whole set.
    let p_plus = prob_plus(&rx_apply(prepare_initial(), theta)).clamp(0.0, 1.0);
    let flip_p = config.noise_p.map(|p| p / 2.0);

    let shots = (0..config.n_shots)
        .map(|_| {
            let mut bit = u8::from(rng.gen_bool(p_plus));
            if let Some(fp) = flip_p {
                if rng.gen_bool(fp) {
                    bit ^= 1;
                }
            }
            ShotRecord::from_bit(bit)
        })
        .collect();
    RecordSet::new(label, shots, Some(config.seed))
}

/// Runs the three record sets (C21, C32, C31) of one experiment. The sets
/// are sampled on separate threads; each has its own RNG stream, so the
/// result matches sequential execution.
pub fn run_experiment(config: &ExperimentConfig) -> Result<[RecordSet; 3]> {
    config.validate()?;
    let [a, b, c] = std::thread::scope(|s| {
        let handles = IntervalLabel::ALL.map(|label| s.spawn(move || run_record_set(config, label)));
        handles.map(|h| h.join().expect("record set worker panicked"))
    });
    Ok([a?, b?, c?])
}

/// Writes the interleaved measurement-record CSV: for every shot a `0`
/// placeholder line for the prepared state followed by the measured bit.
pub fn write_record_csv(path: &Path, records: &RecordSet) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    for shot in records.shots() {
        writeln!(w, "0\n{}", shot.bit()).map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

/// Reads a measurement-record CSV as a hardware-style record set (no seed).
pub fn read_record_csv(path: &Path, label: IntervalLabel) -> Result<RecordSet> {
    let bits = read_measurement_bits(path)?;
    RecordSet::from_bits(label, &bits, None)
}

/// Parses the interleaved record format and returns the measured bits.
pub(crate) fn read_measurement_bits(path: &Path) -> Result<Vec<u8>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_measurement_lines(&text, path)
}

pub(crate) fn parse_measurement_lines(text: &str, path: &Path) -> Result<Vec<u8>> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let v: i64 = line
            .parse()
            .map_err(|_| Error::parse(path, i + 1, format!("expected an integer, got {line:?}")))?;
        values.push((i + 1, v));
    }
    if values.is_empty() {
        return Err(Error::parse(path, 1, "no records"));
    }
    if values.len() % 2 != 0 {
        return Err(Error::parse(
            path,
            values.len(),
            format!("expected an even number of lines, got {}", values.len()),
        ));
    }
    let mut bits = Vec::with_capacity(values.len() / 2);
    for pair in values.chunks_exact(2) {
        let (l0, prepared) = pair[0];
        let (l1, measured) = pair[1];
        if prepared != 0 {
            return Err(Error::parse(
                path,
                l0,
                format!("prepared-state placeholder must be 0, got {prepared}"),
            ));
        }
        match measured {
            0 | 1 => bits.push(measured as u8),
            other => {
                return Err(Error::parse(path, l1, format!("measured bit must be 0 or 1, got {other}")))
            }
        }
    }
    Ok(bits)
}
