use crate::error::{Error, Result};

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626e-34;
/// Boltzmann constant, J/K.
pub const BOLTZMANN: f64 = 1.38e-23;

/// Bose-Einstein mean phonon number of a mode at `f0_hz` and `temp_k`.
pub fn thermal_occupation(f0_hz: f64, temp_k: f64) -> Result<f64> {
    if !(f0_hz > 0.0 && temp_k > 0.0) {
        return Err(Error::invalid(format!(
            "frequency and temperature must be positive, got {f0_hz} Hz, {temp_k} K"
        )));
    }
    Ok(1.0 / (PLANCK * f0_hz / (BOLTZMANN * temp_k)).exp_m1())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn drumhead_at_half_millikelvin() {
        let n = thermal_occupation(15e6, 0.5e-3).unwrap();
        assert!((n - 0.3).abs() < 0.02, "n = {n}");
    }

    #[test]
    fn limits() {
        assert!(thermal_occupation(15e6, 1e-9).unwrap() < 1e-300);
        let t = 1.0;
        let f0 = BOLTZMANN * t * std::f64::consts::LN_2 / PLANCK;
        assert!((thermal_occupation(f0, t).unwrap() - 1.0).abs() < 1e-12);
        assert!(thermal_occupation(0.0, 1.0).is_err());
        assert!(thermal_occupation(1.0, -1.0).is_err());
    }
}
