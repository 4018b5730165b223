//! Quantum-noise toolkit for a spinning whispering-gallery optomechanical
//! force sensor.
//!
//! The resonator supports counter-propagating optical modes whose resonance
//! frequencies are split by the rotation-induced Sagnac-Fizeau shift. Driving
//! the cavity from one side or the other selects the sign of that shift, which
//! makes the linearized quantum dynamics direction-dependent: output-field
//! squeezing, added measurement noise and force sensitivity all become
//! nonreciprocal.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! PhysicalParams + DriveConfig
//!     -> SteadyState            (classical working point, Sagnac shift)
//!     -> LinearModel            (drift A, diffusion D, signal vector)
//!     -> spectra / gaussian     (homodyne spectra, covariances)
//!     -> metrics / sweep        (QNR, SQL comparisons, parameter scans)
//! ```
//!
//! Everything is evaluated with `hbar = 1` and rates in rad/s; SI units enter
//! only at the configuration boundary ([`profile`]) and in the force-noise
//! spectrum, which is reported in N^2/Hz.

pub mod constants;
pub mod csvfmt;
pub mod error;
pub mod gaussian;
pub mod metrics;
pub mod model;
pub mod profile;
pub mod spectra;
pub mod sweep;

pub use error::Error;
pub use model::{
    build_linear_model, sagnac_shift, stability_check, steady_state, thermal_occupancy, Direction,
    DriveConfig, LinearModel, PhysicalParams, SensorModel, SteadyState,
};
pub use profile::Profile;
pub use spectra::{AnglePolicy, FrequencyGrid, SpectrumRecord};

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
