use crate::constants::SPEED_OF_LIGHT;
use crate::{Error, Result};

/// Which port the pump laser enters. The resonator spin direction is fixed
/// (counter-clockwise); the drive side selects the sign of the Sagnac shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn sign(self) -> f64 {
        match self {
            Direction::Forward => 1.0,
            Direction::Backward => -1.0,
        }
    }

    pub fn opposite(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        }
    }
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            other => Err(Error::Validation(format!(
                "direction must be `forward` or `backward`, got `{other}`"
            ))),
        }
    }
}

/// Experimental constants of resonator, mechanics, drive and bath.
///
/// All rates are angular (rad/s); lengths, masses, powers and temperatures are
/// SI. The pump detuning is always the compensated choice `Delta_c = -g0 qbar_m`,
/// which makes the effective detuning equal the Sagnac shift.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalParams {
    /// Refractive index of the resonator material (> 1).
    pub refractive_index: f64,
    /// Resonator radius, m.
    pub radius: f64,
    /// Vacuum drive wavelength, m.
    pub wavelength: f64,
    /// Material dispersion dn/dlambda, 1/m.
    pub dispersion: f64,
    /// Optical quality factor.
    pub optical_q: f64,
    /// Total cavity decay rate kappa, rad/s.
    pub total_decay: f64,
    /// kappa_ex / kappa, in [0, 1].
    pub coupling_efficiency: f64,
    /// Effective mass of the mechanical mode, kg.
    pub effective_mass: f64,
    /// Mechanical quality factor.
    pub mechanical_q: f64,
    /// Mechanical damping rate Gamma_m, rad/s.
    pub mechanical_damping: f64,
    /// Mechanical frequency Omega_m, rad/s.
    pub mechanical_frequency: f64,
    /// Single-photon optomechanical coupling g0, rad/s.
    pub single_photon_coupling: f64,
    /// Pump power at the input port, W.
    pub input_power: f64,
    /// Bath temperature, K.
    pub bath_temperature: f64,
}

impl PhysicalParams {
    /// Static cavity resonance frequency `2 pi c / lambda`, rad/s.
    pub fn cavity_frequency(&self) -> f64 {
        2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / self.wavelength
    }

    /// Derive the mechanical frequency from `Q_m * Gamma_m`.
    pub fn derived_mechanical_frequency(&self) -> f64 {
        self.mechanical_q * self.mechanical_damping
    }

    /// External (fiber-port) decay `eta_c * kappa`.
    pub fn kappa_ex(&self) -> f64 {
        self.coupling_efficiency * self.total_decay
    }

    /// Intrinsic decay `(1 - eta_c) * kappa`.
    pub fn kappa_0(&self) -> f64 {
        (1.0 - self.coupling_efficiency) * self.total_decay
    }

    pub fn validate(&self) -> Result<()> {
        fn req(ok: bool, msg: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::Validation(msg.to_string()))
            }
        }
        req(self.refractive_index > 1.0, "refractive_index must be > 1")?;
        req(self.radius > 0.0, "radius must be > 0")?;
        req(self.wavelength > 0.0, "wavelength must be > 0")?;
        req(self.optical_q > 0.0, "optical_q must be > 0")?;
        req(
            self.total_decay > 0.0,
            "total_decay kappa must be > 0 (a lossless cavity has no stationary state)",
        )?;
        req(
            (0.0..=1.0).contains(&self.coupling_efficiency),
            "coupling_efficiency eta_c must lie in [0, 1]",
        )?;
        req(self.effective_mass > 0.0, "effective_mass must be > 0")?;
        req(self.mechanical_q > 0.0, "mechanical_q must be > 0")?;
        req(
            self.mechanical_damping > 0.0,
            "mechanical_damping Gamma_m must be > 0 (an undamped oscillator has no stationary state)",
        )?;
        req(
            self.mechanical_frequency > 0.0,
            "mechanical_frequency Omega_m must be > 0",
        )?;
        req(
            self.single_photon_coupling >= 0.0,
            "single_photon_coupling g0 must be >= 0",
        )?;
        req(self.input_power >= 0.0, "input_power must be >= 0")?;
        req(
            self.bath_temperature >= 0.0,
            "bath_temperature must be >= 0",
        )?;

        // Omega_m must agree with Q_m * Gamma_m to 1% when both are supplied.
        let derived = self.derived_mechanical_frequency();
        let rel = (self.mechanical_frequency - derived).abs() / derived;
        req(
            rel <= 0.01,
            &format!(
                "mechanical_frequency disagrees with Q_m * Gamma_m by {:.2}% (limit 1%)",
                rel * 100.0
            ),
        )?;

        // Consistency between quoted Q and kappa is advisory only.
        let kappa_from_q = self.cavity_frequency() / self.optical_q;
        let mismatch = (kappa_from_q - self.total_decay).abs() / self.total_decay;
        if mismatch > 0.2 {
            log::warn!(
                "omega0/optical_q = {:.4e} rad/s differs from kappa = {:.4e} rad/s by {:.0}%",
                kappa_from_q,
                self.total_decay,
                mismatch * 100.0
            );
        }
        Ok(())
    }
}

/// Drive-side configuration: input direction, spin rate and homodyne angle.
#[derive(Debug, Clone, PartialEq)]
pub struct DriveConfig {
    pub direction: Direction,
    /// Mechanical rotation rate nu_rot, Hz. `Omega = 2 pi nu_rot` enters the
    /// Sagnac shift.
    pub rotation_frequency: f64,
    /// Local-oscillator phase, rad.
    pub homodyne_angle: f64,
}

impl DriveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.rotation_frequency < 0.0 {
            return Err(Error::Validation(
                "rotation_frequency nu_rot must be >= 0 (the drive side selects the sign)"
                    .to_string(),
            ));
        }
        if !self.homodyne_angle.is_finite() {
            return Err(Error::Validation(
                "homodyne_angle must be finite".to_string(),
            ));
        }
        Ok(())
    }

    pub fn with_direction(&self, direction: Direction) -> Self {
        DriveConfig {
            direction,
            ..self.clone()
        }
    }

    pub fn with_rotation(&self, nu_rot: f64) -> Self {
        DriveConfig {
            rotation_frequency: nu_rot,
            ..self.clone()
        }
    }
}
