use super::params::PhysicalParams;
use super::steady::SteadyState;
use nalgebra::{Matrix4, Vector4};

/// Linearized state-space model over `(dq, dp, dq_m, dp_m)`.
///
/// `xdot = A x + noise`, with symmetrized diffusion matrix `D` (vacuum
/// quadrature variance 1/2) and the force signal entering through `b_sig`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub drift: Matrix4<f64>,
    pub diffusion: Matrix4<f64>,
    pub signal_input: Vector4<f64>,
}

/// Result of the spectral-abscissa stability test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stability {
    /// Largest real part among the eigenvalues of the drift matrix.
    pub abscissa: f64,
    /// True iff the abscissa is strictly negative.
    pub stable: bool,
}

/// Assemble drift, diffusion and signal coupling from the working point.
pub fn build_linear_model(steady: &SteadyState, params: &PhysicalParams) -> LinearModel {
    let kappa = params.total_decay;
    let gamma_m = params.mechanical_damping;
    let omega_m = params.mechanical_frequency;
    let detuning = steady.effective_detuning;
    let g = steady.enhanced_coupling;
    let (sin_phi, cos_phi) = steady.cavity_phase.sin_cos();

    #[rustfmt::skip]
    let drift = Matrix4::new(
        -kappa / 2.0, detuning, g * sin_phi, 0.0,
        -detuning, -kappa / 2.0, -g * cos_phi, 0.0,
        0.0, 0.0, 0.0, omega_m,
        -g * cos_phi, -g * sin_phi, -omega_m, -gamma_m,
    );

    let nbar = steady.thermal_occupancy;
    let diffusion = Matrix4::from_diagonal(&Vector4::new(
        kappa / 2.0,
        kappa / 2.0,
        0.0,
        gamma_m * (2.0 * nbar + 1.0),
    ));

    let signal_input = Vector4::new(0.0, 0.0, 0.0, (2.0 * gamma_m).sqrt());

    LinearModel {
        drift,
        diffusion,
        signal_input,
    }
}

/// Spectral abscissa of the drift matrix.
///
/// Stationary spectra and the Lyapunov covariance exist only when every
/// eigenvalue has a strictly negative real part.
pub fn stability_check(model: &LinearModel) -> Stability {
    let eigenvalues = model.drift.complex_eigenvalues();
    let abscissa = eigenvalues
        .iter()
        .map(|e| e.re)
        .fold(f64::NEG_INFINITY, f64::max);
    Stability {
        abscissa,
        stable: abscissa < 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::steady_state;
    use crate::profile::Profile;
    use approx::assert_relative_eq;

    fn default_model() -> (LinearModel, PhysicalParams, SteadyState) {
        let p = Profile::default();
        let steady = steady_state(&p.params, &p.drive).unwrap();
        let model = build_linear_model(&steady, &p.params);
        (model, p.params, steady)
    }

    /// Entry-by-entry reconstruction from the raw coefficients, written out
    /// independently of the production builder.
    #[test]
    fn drift_matches_independent_builder() {
        let (model, params, steady) = default_model();
        let k = params.total_decay;
        let dt = steady.effective_detuning;
        let g = steady.enhanced_coupling;
        let s = steady.cavity_phase.sin();
        let c = steady.cavity_phase.cos();
        let om = params.mechanical_frequency;
        let gm = params.mechanical_damping;
        #[rustfmt::skip]
        let raw = [
            [-k / 2.0,  dt,       g * s,  0.0],
            [-dt,      -k / 2.0, -g * c,  0.0],
            [0.0,       0.0,      0.0,    om ],
            [-g * c,   -g * s,   -om,    -gm ],
        ];
        for (i, row) in raw.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert_eq!(model.drift[(i, j)], *want, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn trace_is_minus_kappa_minus_gamma() {
        let (model, params, _) = default_model();
        assert_relative_eq!(
            model.drift.trace(),
            -(params.total_decay + params.mechanical_damping),
            max_relative = 1e-14
        );
    }

    #[test]
    fn decoupled_limit_block_diagonal() {
        let p = Profile::default();
        let mut steady = steady_state(&p.params, &p.drive.with_rotation(0.0)).unwrap();
        steady.enhanced_coupling = 0.0;
        let model = build_linear_model(&steady, &p.params);
        let k = p.params.total_decay;
        let om = p.params.mechanical_frequency;
        let gm = p.params.mechanical_damping;
        #[rustfmt::skip]
        let expected = Matrix4::new(
            -k / 2.0, 0.0, 0.0, 0.0,
            0.0, -k / 2.0, 0.0, 0.0,
            0.0, 0.0, 0.0, om,
            0.0, 0.0, -om, -gm,
        );
        assert_eq!(model.drift, expected);

        let st = stability_check(&model);
        assert!(st.stable);
        // eigenvalues are -kappa/2 (twice) and (-Gamma_m +/- sqrt(...))/2
        assert!(st.abscissa <= -gm / 2.0 + 1.0);
    }

    #[test]
    fn diffusion_structure() {
        let (model, params, steady) = default_model();
        let d = &model.diffusion;
        assert_eq!(d[(0, 0)], params.total_decay / 2.0);
        assert_eq!(d[(1, 1)], params.total_decay / 2.0);
        assert_eq!(d[(2, 2)], 0.0);
        assert_relative_eq!(
            d[(3, 3)],
            params.mechanical_damping * (2.0 * steady.thermal_occupancy + 1.0),
            max_relative = 1e-14
        );
        assert_eq!(d.transpose(), *d);
        // PSD: diagonal matrix with nonnegative entries
        assert!((0..4).all(|i| d[(i, i)] >= 0.0));
    }

    #[test]
    fn zero_temperature_diffusion() {
        let p = Profile::default();
        let mut params = p.params;
        params.bath_temperature = 0.0;
        let steady = steady_state(&params, &p.drive).unwrap();
        let model = build_linear_model(&steady, &params);
        assert_eq!(model.diffusion[(3, 3)], params.mechanical_damping);
    }

    #[test]
    fn signal_enters_through_momentum() {
        let (model, params, _) = default_model();
        let expected = (2.0 * params.mechanical_damping).sqrt();
        assert_eq!(model.signal_input, Vector4::new(0.0, 0.0, 0.0, expected));
    }

    #[test]
    fn lossless_limit_is_marginal() {
        // Constructed directly: kappa = 0, Gamma_m = 0 never passes validation,
        // but the stability test itself must report abscissa 0.
        let om = 1.0e6;
        #[rustfmt::skip]
        let model = LinearModel {
            drift: Matrix4::new(
                0.0, 0.0, 0.0, 0.0,
                0.0, 0.0, 0.0, 0.0,
                0.0, 0.0, 0.0, om,
                0.0, 0.0, -om, 0.0,
            ),
            diffusion: Matrix4::zeros(),
            signal_input: Vector4::zeros(),
        };
        let st = stability_check(&model);
        assert!(!st.stable);
        assert!(st.abscissa.abs() < 1e-9 * om);
    }

    /// Routh-Hurwitz conditions on the characteristic polynomial as an
    /// independent stability oracle for the default working point.
    #[test]
    fn default_profile_stable_routh_hurwitz() {
        let (model, _, _) = default_model();
        let st = stability_check(&model);
        assert!(st.stable, "abscissa = {}", st.abscissa);

        // Faddeev-LeVerrier: s^4 + c3 s^3 + c2 s^2 + c1 s + c0
        let a = model.drift;
        let mut m = a;
        let c3 = -m.trace();
        m = a * (m + Matrix4::identity() * c3);
        let c2 = -m.trace() / 2.0;
        m = a * (m + Matrix4::identity() * c2);
        let c1 = -m.trace() / 3.0;
        m = a * (m + Matrix4::identity() * c1);
        let c0 = -m.trace() / 4.0;

        // normalize scale to tame magnitudes: substituting s -> w*t rescales
        // coefficients but preserves sign conditions; check them directly.
        assert!(c3 > 0.0 && c1 > 0.0 && c0 > 0.0, "{c3} {c2} {c1} {c0}");
        assert!(c3 * c2 > c1);
        assert!((c3 * c2 - c1) * c1 > c3 * c3 * c0);
    }

    /// The backward drive at the 5.69 kHz working point sits close to the
    /// instability boundary but remains strictly stable.
    #[test]
    fn backward_working_point_still_stable() {
        let p = Profile::default();
        let drive = p
            .drive
            .with_direction(crate::model::Direction::Backward)
            .with_rotation(5.69e3);
        let steady = steady_state(&p.params, &drive).unwrap();
        let model = build_linear_model(&steady, &p.params);
        let st = stability_check(&model);
        assert!(st.stable);
        assert!(st.abscissa < -100.0, "abscissa = {}", st.abscissa);
    }
}
