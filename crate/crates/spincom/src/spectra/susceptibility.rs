use crate::model::LinearModel;
use crate::{Error, Result};
use nalgebra::Matrix4;
use num_complex::Complex64;

const RESIDUAL_BOUND: f64 = 1e-10;
const CONDITION_WARN: f64 = 1e12;

/// Frequency-domain susceptibility `chi(omega) = (-i omega I - A)^{-1}`.
///
/// Inversion is LU with partial pivoting followed by one Newton refinement
/// step. The result is rejected if the residual `max |(-i omega I - A) chi - I|`
/// exceeds 1e-10; near-singular points (on resonance of an almost marginal
/// model) are held instead to the backward-stable floor `4 eps ||M|| ||chi||`,
/// below which f64 cannot even evaluate the residual.
pub fn susceptibility(model: &LinearModel, omega: f64) -> Result<Matrix4<Complex64>> {
    let m = system_matrix(model, omega);
    let lu = nalgebra::linalg::LU::new(m);
    let mut chi = lu.try_inverse().ok_or(Error::Singular { omega })?;

    // Newton step: chi <- chi (2I - M chi); squares the LU residual
    chi = chi * (Matrix4::identity() * Complex64::new(2.0, 0.0) - m * chi);

    let residual = (m * chi - Matrix4::identity())
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    let norm_m = m.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let norm_chi = chi.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let bound = RESIDUAL_BOUND.max(4.0 * f64::EPSILON * norm_m * norm_chi);
    if !residual.is_finite() || residual > bound {
        return Err(Error::ResidualExceeded { residual, bound });
    }

    if norm_m * norm_chi > CONDITION_WARN {
        log::warn!(
            "susceptibility badly conditioned at omega = {omega:.6e} (cond >~ {:.2e})",
            norm_m * norm_chi
        );
    }
    Ok(chi)
}

fn system_matrix(model: &LinearModel, omega: f64) -> Matrix4<Complex64> {
    let mut m = model.drift.map(|x| Complex64::new(-x, 0.0));
    let iw = Complex64::new(0.0, -omega);
    for i in 0..4 {
        m[(i, i)] += iw;
    }
    m
}

/// Symmetrized intracavity spectrum matrix `S(omega) = chi D chi^dagger`.
pub fn intracavity_spectrum(model: &LinearModel, omega: f64) -> Result<Matrix4<Complex64>> {
    let chi = susceptibility(model, omega)?;
    let d = model.diffusion.map(|x| Complex64::new(x, 0.0));
    Ok(chi * d * chi.adjoint())
}
