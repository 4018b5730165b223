use super::params::{DriveConfig, PhysicalParams};
use crate::constants::{BOLTZMANN, HBAR, SPEED_OF_LIGHT};
use crate::{Error, Result};

/// Classical working point of the driven cavity.
#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    /// Intracavity photon number |alpha|^2.
    pub photon_number: f64,
    /// Mean mechanical displacement qbar_m (dimensionless); pbar_m = 0.
    pub mech_displacement: f64,
    /// Effective detuning Delta-tilde, rad/s. Equals the Sagnac shift under
    /// the compensated pump detuning.
    pub effective_detuning: f64,
    /// Field-enhanced coupling g = sqrt(2) g0 |alpha|, rad/s.
    pub enhanced_coupling: f64,
    /// Cavity-field phase phi_c = arctan(-2 Delta-tilde / kappa), rad.
    pub cavity_phase: f64,
    /// Sagnac-Fizeau shift Delta_F, rad/s (signed).
    pub sagnac_shift: f64,
    /// Thermal phonon occupancy of the mechanical bath.
    pub thermal_occupancy: f64,
}

/// Rotation-induced splitting of the counter-propagating resonances.
///
/// `Delta_F = +/- (n R Omega omega0 / c)(1 - 1/n^2 - (lambda/n) dn/dlambda)`
/// with `Omega = 2 pi nu_rot`; positive for the forward drive, negative for
/// the backward drive.
pub fn sagnac_shift(params: &PhysicalParams, drive: &DriveConfig) -> f64 {
    let n = params.refractive_index;
    let omega_rot = 2.0 * std::f64::consts::PI * drive.rotation_frequency;
    let omega0 = params.cavity_frequency();
    let geometry = params.radius * omega_rot * omega0 / SPEED_OF_LIGHT;
    let dispersion_factor = 1.0 - 1.0 / (n * n) - (params.wavelength / n) * params.dispersion;
    drive.direction.sign() * n * geometry * dispersion_factor
}

/// Mean phonon number `k_B T / (hbar Omega_m)` of the bath.
pub fn thermal_occupancy(params: &PhysicalParams) -> f64 {
    BOLTZMANN * params.bath_temperature / (HBAR * params.mechanical_frequency)
}

/// Solve the classical steady state.
///
/// With the compensated choice `Delta_c = -g0 qbar_m`, the effective detuning
/// is the Sagnac shift itself and the photon number has the closed form
/// `|alpha|^2 = 4 eta_c kappa P_in / (hbar omega_l (kappa^2 + 4 Delta_F^2))`.
/// The drive frequency differs from `omega0` by `g0 qbar_m ~ 1e-8 omega0`, so
/// `omega0` is used in the prefactor.
pub fn steady_state(params: &PhysicalParams, drive: &DriveConfig) -> Result<SteadyState> {
    if params.input_power < 0.0 {
        return Err(Error::Validation("input_power must be >= 0".to_string()));
    }
    let kappa = params.total_decay;
    let delta_f = sagnac_shift(params, drive);
    let omega_l = params.cavity_frequency();
    let photon_number = 4.0 * params.coupling_efficiency * kappa * params.input_power
        / (HBAR * omega_l * (kappa * kappa + 4.0 * delta_f * delta_f));
    if !photon_number.is_finite() {
        return Err(Error::Validation(
            "parameter magnitudes overflow the photon-number evaluation".to_string(),
        ));
    }
    let mech_displacement =
        -params.single_photon_coupling * photon_number / params.mechanical_frequency;
    let enhanced_coupling =
        std::f64::consts::SQRT_2 * params.single_photon_coupling * photon_number.sqrt();
    let cavity_phase = (-2.0 * delta_f / kappa).atan();
    Ok(SteadyState {
        photon_number,
        mech_displacement,
        effective_detuning: delta_f,
        enhanced_coupling,
        cavity_phase,
        sagnac_shift: delta_f,
        thermal_occupancy: thermal_occupancy(params),
    })
}
