use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Pitch class as semitones above C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PitchClass(u8);

const FLAT_NAMES: [&str; 12] = ["C", "Db", "D", "Eb", "E", "F", "Gb", "G", "Ab", "A", "Bb", "B"];

impl PitchClass {
    pub fn new(semitone: u8) -> Option<Self> {
        (semitone < 12).then_some(PitchClass(semitone))
    }

    pub fn semitone(self) -> u8 {
        self.0
    }

    pub fn name(self) -> &'static str {
        FLAT_NAMES[self.0 as usize]
    }
}

impl fmt::Display for PitchClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Accepts `Eb`, `E♭`, `D#`, `Ds` (Sonic Pi style) and friends.
impl FromStr for PitchClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::invalid("empty pitch name"))?
            .to_ascii_uppercase();
        let base: i32 = match letter {
            'C' => 0,
            'D' => 2,
            'E' => 4,
            'F' => 5,
            'G' => 7,
            'A' => 9,
            'B' => 11,
            _ => return Err(Error::invalid(format!("unknown pitch name {s:?}"))),
        };
        let mut offset = 0;
        for c in chars {
            offset += match c {
                'b' | '♭' => -1,
                '#' | 's' | '♯' => 1,
                _ => return Err(Error::invalid(format!("unknown pitch name {s:?}"))),
            };
        }
        Ok(PitchClass((base + offset).rem_euclid(12) as u8))
    }
}

/// Seven pitch classes, played cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaleRing {
    classes: Vec<PitchClass>,
}

impl ScaleRing {
    pub const LEN: usize = 7;

    pub fn new(classes: Vec<PitchClass>) -> Result<Self> {
        if classes.len() != Self::LEN {
            return Err(Error::invalid(format!(
                "scale needs exactly {} pitch classes, got {}",
                Self::LEN,
                classes.len()
            )));
        }
        // Offsets above the root must climb strictly within one octave.
        let root = classes[0].semitone();
        let rel: Vec<u8> = classes.iter().map(|p| (p.semitone() + 12 - root) % 12).collect();
        if rel.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid(format!(
                "scale degrees must ascend within one octave: {}",
                classes.iter().map(|p| p.name()).collect::<Vec<_>>().join(",")
            )));
        }
        Ok(ScaleRing { classes })
    }

    /// E♭ Dorian: E♭ F G♭ A♭ B♭ C D♭.
    pub fn eb_dorian() -> Self {
        ScaleRing::new([3, 5, 6, 8, 10, 0, 1].iter().map(|&s| PitchClass(s)).collect())
            .expect("Eb Dorian is a valid ring")
    }

    pub fn classes(&self) -> &[PitchClass] {
        &self.classes
    }
}

impl FromStr for ScaleRing {
    type Err = Error;

    /// Comma-separated pitch names, or `eb-dorian`.
    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("eb-dorian") {
            return Ok(Self::eb_dorian());
        }
        ScaleRing::new(s.split(',').map(str::parse).collect::<Result<Vec<_>>>()?)
    }
}

/// Ring lookup with a non-negative modulo; octave is left to the Shepard
/// construction.
pub fn scale_pitch(index: i64, ring: &ScaleRing) -> PitchClass {
    ring.classes[index.rem_euclid(ScaleRing::LEN as i64) as usize]
}
