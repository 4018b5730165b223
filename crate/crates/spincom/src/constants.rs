//! Physical constants (exact SI values where the SI defines them).

/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Planck constant, J s (exact).
pub const PLANCK: f64 = 6.626_070_15e-34;

/// Reduced Planck constant, J s.
pub const HBAR: f64 = PLANCK / (2.0 * std::f64::consts::PI);

/// Boltzmann constant, J/K (exact).
pub const BOLTZMANN: f64 = 1.380_649e-23;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_is_h_over_two_pi() {
        assert_eq!(HBAR, PLANCK / std::f64::consts::TAU);
        // shortest round-trip repr matches the frozen reference value
        assert_eq!(HBAR, 1.054_571_817_646_156_5e-34);
    }
}
