//! Frequency-domain engine: susceptibility, output quadrature spectra,
//! homodyne spectrum, mechanical response, added noise, SQL references and
//! squeezing.
//!
//! Conventions: `x[omega] = chi(omega) n[omega]` with
//! `chi = (-i omega I - A)^{-1}`; all spectra are symmetrized with vacuum
//! variance 1/2, so a passive cavity returns exactly 1/2 in every output
//! quadrature.

mod analytic;
mod integrate;
mod output;
mod susceptibility;

pub use analytic::{added_noise_analytic, mechanical_susceptibility, optimal_coupling, sql};
pub use integrate::integrate_intracavity_diagonal;
pub use output::{
    added_noise, force_noise_spectrum, homodyne_spectrum, mechanical_response, output_spectra,
    squeezing_spectrum, OutputResponse,
};
pub use susceptibility::{intracavity_spectrum, susceptibility};

use crate::model::SensorModel;
use crate::{Error, Result};

/// How the homodyne angle is chosen when evaluating a spectrum record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnglePolicy {
    /// Fixed local-oscillator phase, rad.
    Fixed(f64),
    /// Per-frequency angle minimizing the squeezing spectrum `S_qz`.
    Optimal,
}

/// Grid spacing rule for [`FrequencyGrid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScale {
    Linear,
    Logarithmic,
}

/// Strictly increasing Fourier frequencies (rad/s), all positive.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    scale: GridScale,
}

impl FrequencyGrid {
    pub fn new(lo: f64, hi: f64, n: usize, scale: GridScale) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() || lo <= 0.0 || hi <= lo {
            return Err(Error::Validation(
                "frequency grid needs 0 < lo < hi".to_string(),
            ));
        }
        if n < 2 {
            return Err(Error::Validation(
                "frequency grid needs at least 2 points".to_string(),
            ));
        }
        let points = match scale {
            GridScale::Linear => crate::profile::linspace(lo, hi, n),
            GridScale::Logarithmic => {
                let (llo, lhi) = (lo.ln(), hi.ln());
                crate::profile::linspace(llo, lhi, n)
                    .into_iter()
                    .map(f64::exp)
                    .collect()
            }
        };
        Ok(FrequencyGrid { points, scale })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn scale(&self) -> GridScale {
        self.scale
    }
}

/// Everything the toolkit knows about one Fourier frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumRecord {
    /// Fourier frequency, rad/s.
    pub omega: f64,
    /// Symmetrized output amplitude-quadrature spectrum.
    pub s_qq_out: f64,
    /// Symmetrized output phase-quadrature spectrum.
    pub s_pp_out: f64,
    /// Symmetrized output cross spectrum (real part).
    pub s_qp_out: f64,
    /// Homodyne spectrum at the record's angle.
    pub s_ii: f64,
    /// Mechanical response |d q_out^phi / d f_sig|^2.
    pub r_m: f64,
    /// Added noise quanta referred to the force input.
    pub n_add: f64,
    /// Standard quantum limit at this frequency, quanta.
    pub n_sql: f64,
    /// Total force noise spectrum, N^2/Hz (thermal included).
    pub s_ff: f64,
    /// Squeezing spectrum of the rotated output quadrature.
    pub s_qz: f64,
    /// Degree of squeezing, `-log10(2 S_qz)`.
    pub squeeze_db: f64,
    /// Homodyne angle actually used, rad.
    pub phi_lo: f64,
}

impl SpectrumRecord {
    /// Basic sanity required of every record.
    pub fn check(&self) -> Result<()> {
        let ok = self.s_qq_out >= 0.0
            && self.s_pp_out >= 0.0
            && self.s_ff >= 0.0
            && self.n_sql >= 0.5 * (1.0 - 1e-8);
        if ok {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "spectrum record violates positivity at omega = {:.6e}",
                self.omega
            )))
        }
    }
}

/// Resolve the homodyne angle for a policy at one frequency.
pub fn resolve_angle(sensor: &SensorModel, omega: f64, policy: AnglePolicy) -> Result<f64> {
    match policy {
        AnglePolicy::Fixed(phi) => Ok(phi),
        AnglePolicy::Optimal => {
            let out = output::output_response(sensor, omega)?;
            Ok(out.min_squeezing_angle().1)
        }
    }
}

/// Evaluate the full record at one frequency.
pub fn evaluate_record(
    sensor: &SensorModel,
    omega: f64,
    policy: AnglePolicy,
) -> Result<SpectrumRecord> {
    let out = output::output_response(sensor, omega)?;
    let phi = match policy {
        AnglePolicy::Fixed(phi) => phi,
        AnglePolicy::Optimal => out.min_squeezing_angle().1,
    };
    let s_ii = out.homodyne(phi);
    let r_m = out.response(phi);
    let nbar = sensor.nbar();
    let n_add = out.added_noise(phi, nbar)?;
    let n_sql = analytic::sql(&sensor.params, omega);
    let s_ff = output::force_noise_spectrum(&sensor.params, nbar, n_add);
    let (s_qz, squeeze_db) = out.squeezing(phi);
    let record = SpectrumRecord {
        omega,
        s_qq_out: out.s_qq,
        s_pp_out: out.s_pp,
        s_qp_out: out.s_qp,
        s_ii,
        r_m,
        n_add,
        n_sql,
        s_ff,
        s_qz,
        squeeze_db,
        phi_lo: phi,
    };
    record.check()?;
    Ok(record)
}

/// Evaluate a whole grid. Fails on the first unstable/blind point.
pub fn evaluate_grid(
    sensor: &SensorModel,
    grid: &FrequencyGrid,
    policy: AnglePolicy,
) -> Result<Vec<SpectrumRecord>> {
    grid.points()
        .iter()
        .map(|&w| evaluate_record(sensor, w, policy))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_bad_bounds() {
        assert!(FrequencyGrid::new(0.0, 1.0, 10, GridScale::Linear).is_err());
        assert!(FrequencyGrid::new(2.0, 1.0, 10, GridScale::Linear).is_err());
        assert!(FrequencyGrid::new(1.0, 2.0, 1, GridScale::Linear).is_err());
    }

    #[test]
    fn log_grid_is_increasing_and_spans() {
        let g = FrequencyGrid::new(1.0, 1.0e6, 7, GridScale::Logarithmic).unwrap();
        let p = g.points();
        assert_eq!(p.len(), 7);
        assert!(p.windows(2).all(|w| w[1] > w[0]));
        assert!((p[0] - 1.0).abs() < 1e-12);
        assert!((p[6] - 1.0e6).abs() / 1.0e6 < 1e-12);
    }
}
