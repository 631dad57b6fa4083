//! Measurement records to music: each shot steps a walk up (bit 1) or down
//! (bit 0) a seven-note scale ring, and each step sounds as a Shepard tone.
//! Three walks (C21, C32, C31 records) play together as one movement.

mod compose;
mod scale;
mod shepard;
mod walk;

pub use compose::{
    compose, mix_movement, mix_raw, movement_order, render_movement, Movement, DEFAULT_GAP_S,
};
pub use scale::{scale_pitch, PitchClass, ScaleRing};
pub use shepard::{
    gaussian_factor, midi_frequency, midi_number, movement_samples, partial_amplitude,
    render_voice, shepard_note, shepard_tone, Envelope, ShepardParams,
};
pub use walk::{parse_measurement_csv, walk_from_bits, NoteWalk};
