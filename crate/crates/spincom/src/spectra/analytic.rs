use crate::model::PhysicalParams;
use num_complex::Complex64;

/// Mechanical susceptibility
/// `chi_m(omega) = Omega_m / (Omega_m^2 - omega^2 - i omega Gamma_m)`.
pub fn mechanical_susceptibility(params: &PhysicalParams, omega: f64) -> Complex64 {
    let om = params.mechanical_frequency;
    let gm = params.mechanical_damping;
    Complex64::new(om, 0.0) / Complex64::new(om * om - omega * omega, -omega * gm)
}

/// Standard quantum limit `n_SQL = 1 / (2 Gamma_m |chi_m|)`, quanta.
pub fn sql(params: &PhysicalParams, omega: f64) -> f64 {
    1.0 / (2.0 * params.mechanical_damping * mechanical_susceptibility(params, omega).norm())
}

/// Closed-form added noise of the standard static sensing procedure
/// (eta_c = 1, phi = pi/2, no rotation, kappa >> omega):
/// shot term `g^2/(kappa Gamma_m)` plus backaction term
/// `kappa / (16 g^2 Gamma_m |chi_m|^2)`.
pub fn added_noise_analytic(params: &PhysicalParams, g: f64, omega: f64) -> f64 {
    let kappa = params.total_decay;
    let gm = params.mechanical_damping;
    let chi_sq = mechanical_susceptibility(params, omega).norm_sqr();
    g * g / (kappa * gm) + kappa / (16.0 * g * g * gm * chi_sq)
}

/// Coupling that balances shot and backaction noise,
/// `g_opt = sqrt(kappa / (4 |chi_m|))`. At this point the analytic added
/// noise equals the SQL.
pub fn optimal_coupling(params: &PhysicalParams, omega: f64) -> f64 {
    (params.total_decay / (4.0 * mechanical_susceptibility(params, omega).norm())).sqrt()
}
