use std::path::Path;

use crate::error::{Error, Result};
use crate::lg;

/// Scale-degree positions played by one voice. `indices[t]` sounds at step
/// `t`; `final_index` is where the walk ends up and carries the closing note.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoteWalk {
    indices: Vec<i64>,
    final_index: i64,
}

impl NoteWalk {
    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    pub fn final_index(&self) -> i64 {
        self.final_index
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Reads a measurement-record CSV and returns its measured bits. With
/// `n_shots` set the file must hold exactly `2·n_shots` lines.
pub fn parse_measurement_csv(path: &Path, n_shots: Option<usize>) -> Result<Vec<u8>> {
    let bits = lg::records_bits(path)?;
    match n_shots {
        Some(n) if bits.len() != n => Err(Error::parse(
            path,
            2 * bits.len(),
            format!("expected {} lines ({n} shots), found {}", 2 * n, 2 * bits.len()),
        )),
        _ => Ok(bits),
    }
}

/// Play-then-step: the current degree sounds, then bit 1 moves up one
/// degree and bit 0 moves down.
pub fn walk_from_bits(bits: &[u8]) -> Result<NoteWalk> {
    if bits.is_empty() {
        return Err(Error::invalid("cannot build a walk from zero shots"));
    }
    let mut indices = Vec::with_capacity(bits.len());
    let mut pos = 0i64;
    for &b in bits {
        indices.push(pos);
        pos += if b == 0 { -1 } else { 1 };
    }
    Ok(NoteWalk {
        indices,
        final_index: pos,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmusic::scale::{scale_pitch, ScaleRing};
    use proptest::prelude::*;
    use std::fs;

    #[test]
    fn limits_and_hand_trace() {
        assert_eq!(walk_from_bits(&[1, 1, 1, 1]).unwrap().indices(), &[0, 1, 2, 3]);
        assert_eq!(walk_from_bits(&[0, 0, 0]).unwrap().indices(), &[0, -1, -2]);
        let w = walk_from_bits(&[1, 0, 0, 1]).unwrap();
        assert_eq!(w.indices(), &[0, 1, 0, -1]);
        assert_eq!(w.final_index(), 0);
        assert!(walk_from_bits(&[]).is_err());
    }

    #[test]
    fn perfect_correlation_pitch_sequences() {
        let ring = ScaleRing::eb_dorian();
        let names = |bits: &[u8]| -> Vec<&str> {
            walk_from_bits(bits).unwrap().indices().iter().map(|&i| scale_pitch(i, &ring).name()).collect()
        };
        assert_eq!(names(&[1; 8]), ["Eb", "F", "Gb", "Ab", "Bb", "C", "Db", "Eb"]);
        assert_eq!(names(&[0; 8]), ["Eb", "Db", "C", "Bb", "Ab", "Gb", "F", "Eb"]);
    }

    #[test]
    fn csv_parsing() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("v.csv");
        fs::write(&p, "0\n1\n0\n1\n").unwrap();
        assert_eq!(parse_measurement_csv(&p, Some(2)).unwrap(), vec![1, 1]);
        assert!(parse_measurement_csv(&p, Some(3)).is_err());
        fs::write(&p, "0\n0\n0\n1\n").unwrap();
        assert_eq!(parse_measurement_csv(&p, None).unwrap(), vec![0, 1]);
        fs::write(&p, "1\n0\n").unwrap();
        assert!(parse_measurement_csv(&p, Some(1)).is_err());
    }

    proptest! {
        #[test]
        fn walks_are_unit_steps(bits in prop::collection::vec(0u8..=1, 1..200)) {
            let w = walk_from_bits(&bits).unwrap();
            prop_assert_eq!(w.indices()[0], 0);
            prop_assert_eq!(w.len(), bits.len());
            let mut all = w.indices().to_vec();
            all.push(w.final_index());
            prop_assert!(all.windows(2).all(|p| (p[1] - p[0]).abs() == 1));
        }
    }
}
