//! Walk the full pipeline once and print the direction-resolved numbers at
//! the default working point.
//!
//! ```sh
//! cargo run -p spincom --example working_point
//! ```

use spincom::gaussian::{quadrature_squeezing_witness, solve_lyapunov};
use spincom::metrics::{qnr_from_sqz, quantum_advantage};
use spincom::model::{Direction, SensorModel};
use spincom::profile::Profile;
use spincom::spectra::{evaluate_record, squeezing_spectrum, AnglePolicy};
use std::f64::consts::{FRAC_PI_2, TAU};

fn main() -> Result<(), spincom::Error> {
    let profile = Profile::default();
    let omega = TAU * 1.0e3; // 1 kHz Fourier frequency

    let forward = SensorModel::new(profile.params.clone(), profile.drive.clone())?;
    let backward = SensorModel::new(
        profile.params.clone(),
        profile.drive.with_direction(Direction::Backward),
    )?;

    println!(
        "spin rate           : {} Hz",
        profile.drive.rotation_frequency
    );
    println!(
        "sagnac shift        : {:+.3e} rad/s ({:+.3} kappa)",
        forward.steady.sagnac_shift,
        forward.steady.sagnac_shift / forward.params.total_decay
    );
    println!(
        "enhanced coupling   : 2pi x {:.3e} Hz",
        forward.steady.enhanced_coupling / TAU
    );

    // squeezing at the forward-optimal angle
    let fwd = evaluate_record(&forward, omega, AnglePolicy::Optimal)?;
    let (s_bwd, bwd_db) = squeezing_spectrum(&backward, omega, fwd.phi_lo)?;
    println!(
        "squeezing at 1 kHz  : forward {:+.4}, backward {:+.4} (same angle)",
        fwd.squeeze_db, bwd_db
    );
    println!(
        "QNR                 : {:+.4}",
        qnr_from_sqz(fwd.s_qz, s_bwd)?
    );

    // sensing numbers at the standard phase-quadrature readout
    let fwd_pi2 = evaluate_record(&forward, omega, AnglePolicy::Fixed(FRAC_PI_2))?;
    let bwd_pi2 = evaluate_record(&backward, omega, AnglePolicy::Fixed(FRAC_PI_2))?;
    println!(
        "n_add / n_SQL       : forward {:.3}, backward {:.3}",
        fwd_pi2.n_add / fwd_pi2.n_sql,
        bwd_pi2.n_add / bwd_pi2.n_sql
    );
    println!(
        "quantum advantage   : forward {:+.3} dB, backward {:+.3} dB",
        quantum_advantage(&fwd_pi2, fwd_pi2.n_sql),
        quantum_advantage(&bwd_pi2, bwd_pi2.n_sql)
    );
    println!(
        "force noise         : forward {:.3e} N^2/Hz at 1 kHz",
        fwd_pi2.s_ff
    );

    // stationary state
    let v_fwd = solve_lyapunov(&forward.linear)?;
    let v_bwd = solve_lyapunov(&backward.linear)?;
    let (min_f, _) = quadrature_squeezing_witness(&v_fwd);
    let (min_b, _) = quadrature_squeezing_witness(&v_bwd);
    println!(
        "stationary optical  : min variance forward {:.4}, backward {:.4} (vacuum 0.5)",
        min_f, min_b
    );
    println!(
        "mechanical variance : forward {:.1}, backward {:.1} quanta-equivalents",
        v_fwd.matrix[(2, 2)],
        v_bwd.matrix[(2, 2)]
    );
    Ok(())
}
