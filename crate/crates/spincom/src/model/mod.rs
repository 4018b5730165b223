//! Physical parameters, classical working point and linearized state-space
//! model of the spinning optomechanical sensor.
//!
//! State ordering everywhere is `(dq, dp, dq_m, dp_m)`: optical amplitude and
//! phase quadratures followed by the mechanical position and momentum
//! quadratures. Vacuum quadrature variance is 1/2.

mod linear;
mod params;
mod steady;

pub use linear::{build_linear_model, stability_check, LinearModel, Stability};
pub use params::{Direction, DriveConfig, PhysicalParams};
pub use steady::{sagnac_shift, steady_state, thermal_occupancy, SteadyState};

use crate::Result;

/// A validated parameter set together with everything derived from it.
///
/// Bundles the usual pipeline (steady state, drift/diffusion matrices,
/// stability) so the spectra and covariance layers can take a single
/// argument.
#[derive(Debug, Clone)]
pub struct SensorModel {
    pub params: PhysicalParams,
    pub drive: DriveConfig,
    pub steady: SteadyState,
    pub linear: LinearModel,
    pub stability: Stability,
}

impl SensorModel {
    /// Validate, solve the working point and linearize.
    ///
    /// Does not require stability: sweeps mask unstable points instead of
    /// failing. Operations that need a stationary state check [`Self::stability`]
    /// themselves.
    pub fn new(params: PhysicalParams, drive: DriveConfig) -> Result<Self> {
        params.validate()?;
        drive.validate()?;
        let steady = steady_state(&params, &drive)?;
        let linear = build_linear_model(&steady, &params);
        let stability = stability_check(&linear);
        Ok(SensorModel {
            params,
            drive,
            steady,
            linear,
            stability,
        })
    }

    /// Thermal phonon occupancy of the mechanical bath.
    pub fn nbar(&self) -> f64 {
        self.steady.thermal_occupancy
    }

    /// Error unless the drift matrix is strictly stable.
    pub fn require_stable(&self) -> Result<()> {
        if self.stability.stable {
            Ok(())
        } else {
            Err(crate::Error::Unstable {
                abscissa: self.stability.abscissa,
            })
        }
    }
}
