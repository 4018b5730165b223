use super::susceptibility::susceptibility;
use crate::constants::HBAR;
use crate::model::{PhysicalParams, SensorModel};
use crate::{Error, Result};
use nalgebra::Vector2;
use num_complex::Complex64;

/// Output-field response at one Fourier frequency.
///
/// Built from the input-output relation `a_out = sqrt(eta_c kappa) a - a_in`,
/// which keeps the interference between the intracavity field and the
/// reflected input. Five independent noise ports enter: the fiber vacuum
/// (q/p), the intrinsic-loss vacuum (q/p) and the thermal Brownian force.
#[derive(Debug, Clone)]
pub struct OutputResponse {
    pub omega: f64,
    /// Symmetrized output spectra (vacuum = 1/2).
    pub s_qq: f64,
    pub s_pp: f64,
    /// Real (symmetrized) part of the cross spectrum.
    pub s_qp: f64,
    /// Transfer from the signal force to `(q_out, p_out)`.
    signal: Vector2<Complex64>,
}

/// Noise-port coefficients of one output quadrature.
type PortRow = [Complex64; 5];

pub(crate) fn output_response(sensor: &SensorModel, omega: f64) -> Result<OutputResponse> {
    sensor.require_stable()?;
    let params = &sensor.params;
    let chi = susceptibility(&sensor.linear, omega)?;

    let kappa = params.total_decay;
    let eta = params.coupling_efficiency;
    let root_ex = (eta * kappa).sqrt(); // sqrt(eta_c kappa)
    let root_in = ((1.0 - eta) * kappa).sqrt(); // sqrt(kappa_0)
    let root_th = (2.0 * params.mechanical_damping).sqrt();

    // ports: (q_in, p_in, q_0, p_0, f_th)
    let mut row_q: PortRow = [Complex64::default(); 5];
    let mut row_p: PortRow = [Complex64::default(); 5];
    for (out_row, row) in [(0usize, &mut row_q), (1usize, &mut row_p)] {
        row[0] = root_ex * chi[(out_row, 0)] * root_ex;
        row[1] = root_ex * chi[(out_row, 1)] * root_ex;
        row[2] = root_ex * chi[(out_row, 0)] * root_in;
        row[3] = root_ex * chi[(out_row, 1)] * root_in;
        row[4] = root_ex * chi[(out_row, 3)] * root_th;
    }
    // reflected input interferes with the emitted field
    row_q[0] -= Complex64::new(1.0, 0.0);
    row_p[1] -= Complex64::new(1.0, 0.0);

    let nbar = sensor.nbar();
    let psd = [0.5, 0.5, 0.5, 0.5, nbar + 0.5];

    let mut s_qq = 0.0;
    let mut s_pp = 0.0;
    let mut s_qp = Complex64::default();
    for k in 0..5 {
        s_qq += psd[k] * row_q[k].norm_sqr();
        s_pp += psd[k] * row_p[k].norm_sqr();
        s_qp += psd[k] * row_q[k] * row_p[k].conj();
    }

    let signal = Vector2::new(
        root_ex * chi[(0, 3)] * root_th,
        root_ex * chi[(1, 3)] * root_th,
    );

    Ok(OutputResponse {
        omega,
        s_qq,
        s_pp,
        s_qp: s_qp.re,
        signal,
    })
}

impl OutputResponse {
    /// Homodyne spectrum of the rotated quadrature
    /// `q_out cos(phi) + p_out sin(phi)`.
    pub fn homodyne(&self, phi_lo: f64) -> f64 {
        let (s, c) = phi_lo.sin_cos();
        self.s_qq * c * c + self.s_pp * s * s + 2.0 * self.s_qp * s * c
    }

    /// Mechanical response `|d q_out^phi / d f_sig|^2`.
    pub fn response(&self, phi_lo: f64) -> f64 {
        let (s, c) = phi_lo.sin_cos();
        (self.signal[0] * c + self.signal[1] * s).norm_sqr()
    }

    /// Added noise quanta after thermal subtraction:
    /// `n_add = S_II / R_m - nbar`.
    pub fn added_noise(&self, phi_lo: f64, nbar: f64) -> Result<f64> {
        let r_m = self.response(phi_lo);
        if r_m <= 0.0 {
            return Err(Error::BlindSensor { omega: self.omega });
        }
        Ok(self.homodyne(phi_lo) / r_m - nbar)
    }

    /// Squeezing spectrum and its decibel-like degree `-log10(2 S_qz)`.
    ///
    /// Numerically identical to the homodyne quadratic form; kept separate
    /// because it is normalized so vacuum sits exactly at 1/2.
    pub fn squeezing(&self, phi_lo: f64) -> (f64, f64) {
        let s_qz = self.homodyne(phi_lo);
        (s_qz, -(2.0 * s_qz).log10())
    }

    /// Smallest squeezing over all angles and its angle in `[0, pi)`.
    ///
    /// The quadratic form is diagonalized in closed form: the extrema sit at
    /// the eigen-angles of `[[s_qq, s_qp], [s_qp, s_pp]]`.
    pub fn min_squeezing_angle(&self) -> (f64, f64) {
        let half_sum = 0.5 * (self.s_qq + self.s_pp);
        let half_diff = 0.5 * (self.s_qq - self.s_pp);
        let radius = (half_diff * half_diff + self.s_qp * self.s_qp).sqrt();
        let lambda_min = half_sum - radius;
        // eigenvector angle for the smaller eigenvalue
        let angle =
            0.5 * (2.0 * self.s_qp).atan2(self.s_qq - self.s_pp) + std::f64::consts::FRAC_PI_2;
        let angle = angle.rem_euclid(std::f64::consts::PI);
        (lambda_min, angle)
    }
}

/// Spec-facing wrapper: the three symmetrized output spectra.
pub fn output_spectra(sensor: &SensorModel, omega: f64) -> Result<(f64, f64, f64)> {
    let out = output_response(sensor, omega)?;
    Ok((out.s_qq, out.s_pp, out.s_qp))
}

/// Homodyne spectrum at an explicit angle.
pub fn homodyne_spectrum(sensor: &SensorModel, omega: f64, phi_lo: f64) -> Result<f64> {
    Ok(output_response(sensor, omega)?.homodyne(phi_lo))
}

/// Mechanical response at an explicit angle.
pub fn mechanical_response(sensor: &SensorModel, omega: f64, phi_lo: f64) -> Result<f64> {
    Ok(output_response(sensor, omega)?.response(phi_lo))
}

/// Added noise referred to the force input.
pub fn added_noise(sensor: &SensorModel, omega: f64, phi_lo: f64) -> Result<f64> {
    output_response(sensor, omega)?.added_noise(phi_lo, sensor.nbar())
}

/// Squeezing spectrum `(S_qz, squeeze_db)` at an explicit angle.
pub fn squeezing_spectrum(sensor: &SensorModel, omega: f64, phi_lo: f64) -> Result<(f64, f64)> {
    Ok(output_response(sensor, omega)?.squeezing(phi_lo))
}

/// Total force noise spectrum `S_FF = 2 hbar m Gamma_m Omega_m (nbar + n_add)`
/// in SI units, N^2/Hz.
pub fn force_noise_spectrum(params: &PhysicalParams, nbar: f64, n_add: f64) -> f64 {
    2.0 * HBAR
        * params.effective_mass
        * params.mechanical_damping
        * params.mechanical_frequency
        * (nbar + n_add)
}
