use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;

/// Rotation angle `ΩΔt` in radians. Only the product of the Rabi rate and
/// the interval ever enters the dynamics.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct RotationAngle(f64);

impl RotationAngle {
    pub fn new(radians: f64) -> Option<Self> {
        radians.is_finite().then_some(Self(radians))
    }

    /// Angle given as a multiple of π, the way the experiment tables list it.
    pub fn from_pi_multiple(multiple: f64) -> Option<Self> {
        Self::new(multiple * PI)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn over_pi(self) -> f64 {
        self.0 / PI
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self(self.0 * factor)
    }
}

impl fmt::Display for RotationAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}π", self.over_pi())
    }
}

/// Pure state `amp0·|0⟩ + amp1·|1⟩` of the qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    pub amp0: Complex64,
    pub amp1: Complex64,
}

impl QubitState {
    pub fn norm_sqr(&self) -> f64 {
        self.amp0.norm_sqr() + self.amp1.norm_sqr()
    }
}

/// Basis state 0, which carries spin value `2·0 − 1 = −1`.
pub fn prepare_initial() -> QubitState {
    QubitState {
        amp0: Complex64::new(1.0, 0.0),
        amp1: Complex64::new(0.0, 0.0),
    }
}

/// Applies `exp(−iθσx/2)`.
pub fn rx_apply(state: QubitState, theta: RotationAngle) -> QubitState {
    let half = theta.radians() / 2.0;
    let c = Complex64::new(half.cos(), 0.0);
    let mis = Complex64::new(0.0, -half.sin());
    QubitState {
        amp0: c * state.amp0 + mis * state.amp1,
        amp1: mis * state.amp0 + c * state.amp1,
    }
}

/// Born probability of reading bit 1 (spin +1).
pub fn prob_plus(state: &QubitState) -> f64 {
    state.amp1.norm_sqr()
}
