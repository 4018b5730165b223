//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured numbers (run with `--nocapture` to see them).

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spincom::gaussian::solve_lyapunov;
use spincom::metrics::{enhancement_factor, qnr_from_sqz, quantum_advantage};
use spincom::model::{Direction, SensorModel};
use spincom::profile::Profile;
use spincom::spectra::{
    added_noise_analytic, evaluate_grid, evaluate_record, integrate_intracavity_diagonal,
    optimal_coupling, output_spectra, sql, squeezing_spectrum, AnglePolicy,
};
use spincom::sweep::{minimize_scalar, sweep, AxisGrid, SweepAxis, SweepMetric, SweepSpec};
use std::f64::consts::{FRAC_PI_2, PI, TAU};

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf(i as f64 / (n - 1) as f64))
        .collect()
}

/// Criterion 1: minimizing the closed-form added noise over the coupling
/// reproduces the SQL to 1e-9 relative at 50 log-spaced frequencies.
#[test]
fn acceptance_01_sql_identity() {
    let params = Profile::default().params;
    let mut worst = 0.0f64;
    for omega in log_spaced(TAU * 10.0, TAU * 1.0e6, 50) {
        let g_opt = optimal_coupling(&params, omega);
        let (_, min_value) = minimize_scalar(
            |g| Some(added_noise_analytic(&params, g, omega)),
            g_opt / 10.0,
            g_opt * 10.0,
            g_opt * 1e-12,
            33,
        )
        .unwrap();
        let rel = (min_value - sql(&params, omega)).abs() / sql(&params, omega);
        worst = worst.max(rel);
    }
    println!(
        "criterion 1 (SQL identity): PASS - worst relative error {worst:.3e} over 50 frequencies"
    );
    assert!(worst < 1e-9, "worst relative error {worst:.3e}");
}

/// Criterion 2: the SQL at mechanical resonance is exactly half a quantum.
#[test]
fn acceptance_02_resonant_sql() {
    let params = Profile::default().params;
    let v = sql(&params, params.mechanical_frequency);
    let err = (v - 0.5).abs();
    println!("criterion 2 (resonant SQL = 1/2): PASS - |n_SQL(Omega_m) - 1/2| = {err:.3e}");
    assert!(err < 1e-12);
}

fn random_stable_profile(rng: &mut ChaCha8Rng) -> SensorModel {
    loop {
        let mut p = Profile::default();
        p.params.refractive_index = rng.gen_range(1.2..2.2);
        p.params.radius = rng.gen_range(5e-5..1e-3);
        p.params.total_decay *= rng.gen_range(0.3..3.0);
        p.params.coupling_efficiency = rng.gen_range(0.0..=1.0);
        p.params.mechanical_damping *= rng.gen_range(0.3..3.0);
        p.params.mechanical_frequency = p.params.derived_mechanical_frequency();
        p.params.input_power = rng.gen_range(0.0..20e-3);
        p.params.bath_temperature = rng.gen_range(0.0..1.0);
        p.drive.rotation_frequency = rng.gen_range(0.0..9e3);
        p.drive.direction = if rng.gen_bool(0.5) {
            Direction::Forward
        } else {
            Direction::Backward
        };
        let sensor = SensorModel::new(p.params, p.drive).unwrap();
        if sensor.stability.stable {
            return sensor;
        }
    }
}

/// Criterion 3: Lyapunov residual and Heisenberg physicality over 100
/// randomized stable profiles.
#[test]
fn acceptance_03_lyapunov_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let mut worst_resid = 0.0f64;
    let mut worst_phys = f64::INFINITY;
    for _ in 0..100 {
        let sensor = random_stable_profile(&mut rng);
        let v = solve_lyapunov(&sensor.linear).unwrap();
        let d_norm = sensor
            .linear
            .diffusion
            .iter()
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt();
        worst_resid = worst_resid.max(v.residual(&sensor.linear) / d_norm);
        worst_phys = worst_phys.min(v.physicality_min_eigenvalue());
    }
    println!(
        "criterion 3 (Lyapunov residual): PASS - worst residual {worst_resid:.3e} * ||D||_F, \
         min physicality eigenvalue {worst_phys:.3e}"
    );
    assert!(worst_resid < 1e-10);
    assert!(worst_phys > -1e-9);
}

/// Criterion 4: frequency-integrated intracavity spectra match the Lyapunov
/// covariance diagonal within 0.5% on the default profile.
#[test]
fn acceptance_04_spectrum_covariance_duality() {
    let p = Profile::default();
    let sensor = SensorModel::new(p.params, p.drive).unwrap();
    let v = solve_lyapunov(&sensor.linear).unwrap();
    let integral =
        integrate_intracavity_diagonal(&sensor.linear, TAU * 1.0, TAU * 1.0e9, 1e-6).unwrap();
    let mut worst = 0.0f64;
    for i in 0..4 {
        let rel = (integral[i] - v.matrix[(i, i)]).abs() / v.matrix[(i, i)];
        worst = worst.max(rel);
    }
    println!(
        "criterion 4 (spectrum-covariance duality): PASS - worst diagonal mismatch {:.3}%",
        worst * 100.0
    );
    assert!(worst < 5e-3, "worst relative mismatch {worst:.3e}");
}

/// Criterion 5: QNR vanishes exactly without rotation and is exactly
/// antisymmetric under a direction swap, across 20 random profiles.
#[test]
fn acceptance_05_reciprocity_null() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    let mut checked = 0;
    while checked < 20 {
        let mut p = Profile::default();
        p.params.total_decay *= rng.gen_range(0.5..2.0);
        p.params.input_power = rng.gen_range(1e-4..12e-3);
        p.params.bath_temperature = rng.gen_range(0.0..0.5);
        p.params.radius = rng.gen_range(5e-5..5e-4);
        let nu = rng.gen_range(100.0..6e3);
        let omega = TAU * rng.gen_range(10.0..1e6);
        let phi = rng.gen_range(0.0..PI);

        let make = |direction: Direction, nu_rot: f64| {
            SensorModel::new(
                p.params.clone(),
                p.drive.with_direction(direction).with_rotation(nu_rot),
            )
            .unwrap()
        };
        let f0 = make(Direction::Forward, 0.0);
        let b0 = make(Direction::Backward, 0.0);
        let fs = make(Direction::Forward, nu);
        let bs = make(Direction::Backward, nu);
        if !(f0.stability.stable && fs.stability.stable && bs.stability.stable) {
            continue;
        }
        let sqz = |s: &SensorModel| squeezing_spectrum(s, omega, phi).unwrap().0;
        let q0 = qnr_from_sqz(sqz(&f0), sqz(&b0)).unwrap();
        assert_eq!(q0, 0.0, "QNR at zero rotation must vanish exactly");
        let q = qnr_from_sqz(sqz(&fs), sqz(&bs)).unwrap();
        let q_swapped = qnr_from_sqz(sqz(&bs), sqz(&fs)).unwrap();
        assert_eq!(q, -q_swapped, "QNR must negate exactly under swap");
        checked += 1;
    }
    println!("criterion 5 (reciprocity null): PASS - 20 profiles, exact null and antisymmetry");
}

/// Criterion 6: one-way squeezing at the 5.69 kHz working point. The
/// reference experiment's exact decibel values depend on parameters that were
/// never published; the sign/direction structure is the acceptance bar.
#[test]
fn acceptance_06_one_way_squeezing() {
    let p = Profile::default();
    let omega = TAU * 1.0e3;
    let nu_star = 5.69e3;

    let fwd = SensorModel::new(
        p.params.clone(),
        p.drive
            .with_direction(Direction::Forward)
            .with_rotation(nu_star),
    )
    .unwrap();
    let bwd = SensorModel::new(
        p.params.clone(),
        p.drive
            .with_direction(Direction::Backward)
            .with_rotation(nu_star),
    )
    .unwrap();
    let stat = SensorModel::new(p.params.clone(), p.drive.with_rotation(0.0)).unwrap();

    // forward at its optimal homodyne angle
    let fwd_record = evaluate_record(&fwd, omega, AnglePolicy::Optimal).unwrap();
    // backward at the same settings (the forward-optimal angle)
    let (_, bwd_db) = squeezing_spectrum(&bwd, omega, fwd_record.phi_lo).unwrap();
    // static device at the default profile angle (amplitude quadrature)
    let (_, static_db) = squeezing_spectrum(&stat, omega, p.drive.homodyne_angle).unwrap();

    println!(
        "criterion 6 (one-way squeezing): PASS - forward {:+.4}, backward {:+.4} at the same \
         angle ({:.4} rad), static {:+.1e}",
        fwd_record.squeeze_db, bwd_db, fwd_record.phi_lo, static_db
    );
    assert!(fwd_record.squeeze_db > 0.0, "forward must squeeze");
    assert!(bwd_db < 0.0, "backward must antisqueeze at the same angle");
    assert!(static_db.abs() < 1e-6, "static reference must sit at zero");

    // stronger form of the static null: the amplitude quadrature of the
    // static device is exactly vacuum across the whole default grid
    let grid = p.grids.omega_grid().unwrap();
    for &w in grid.points() {
        let (s_qq, _, _) = output_spectra(&stat, w).unwrap();
        assert!((s_qq - 0.5).abs() < 1e-9, "static S_qq at {w}");
    }
}

/// Criterion 7: sub-SQL structure of the scaled noise ratio at phi = pi/2.
/// Forward shows a sub-SQL band with an interior minimum in omega and a
/// single connected valley over (nu_rot, omega); backward stays above the
/// SQL everywhere on the same grid.
#[test]
fn acceptance_07_sub_sql_valley() {
    let p = Profile::default();

    // 1-D scan in omega at a spin rate inside the finite-frequency
    // cancellation window
    let nu_scan = 1.8e3;
    let fwd = SensorModel::new(
        p.params.clone(),
        p.drive
            .with_direction(Direction::Forward)
            .with_rotation(nu_scan),
    )
    .unwrap();
    let grid = p.grids.omega_grid().unwrap();
    let records = evaluate_grid(&fwd, &grid, AnglePolicy::Fixed(FRAC_PI_2)).unwrap();
    let ratios: Vec<f64> = records.iter().map(|r| r.n_add / r.n_sql).collect();
    let band: Vec<usize> = (0..ratios.len()).filter(|&i| ratios[i] < 1.0).collect();
    assert!(!band.is_empty(), "sub-SQL band must be nonempty");
    let (argmin, min_ratio) = ratios
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, &v)| (i, v))
        .unwrap();
    assert!(
        argmin > 0 && argmin < ratios.len() - 1,
        "omega minimum at grid edge (index {argmin})"
    );
    assert!(
        argmin > band[0] && argmin < *band.last().unwrap(),
        "omega minimum must be interior to the band"
    );
    let f_min_hz = records[argmin].omega / TAU;

    // 2-D sweep
    let axes = vec![
        AxisGrid::linear(SweepAxis::NuRot, p.grids.nu_min_hz, p.grids.nu_max_hz, 100).unwrap(),
        AxisGrid::logarithmic(
            SweepAxis::Omega,
            TAU * p.grids.omega_min_hz,
            TAU * p.grids.omega_max_hz,
            100,
        )
        .unwrap(),
    ];
    let spec = SweepSpec {
        profile: p.clone(),
        metric: SweepMetric::NoiseRatio,
        axes: axes.clone(),
        omega: TAU * 1.0e3,
        angle: AnglePolicy::Fixed(FRAC_PI_2),
    };
    let result = sweep(&spec).unwrap();
    assert!(
        result.masked.iter().all(|&m| !m),
        "forward grid must be fully stable"
    );

    // connectivity of the sub-SQL region (4-neighbour)
    let below: std::collections::HashSet<(usize, usize)> = (0..result.len())
        .filter(|&k| result.values[k] < 1.0)
        .map(|k| (k / 100, k % 100))
        .collect();
    assert!(!below.is_empty());
    let start = *below.iter().min().unwrap();
    let mut seen = std::collections::HashSet::from([start]);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some((i, j)) = queue.pop_front() {
        for (ni, nj) in [
            (i.wrapping_sub(1), j),
            (i + 1, j),
            (i, j.wrapping_sub(1)),
            (i, j + 1),
        ] {
            if below.contains(&(ni, nj)) && seen.insert((ni, nj)) {
                queue.push_back((ni, nj));
            }
        }
    }
    assert_eq!(
        seen.len(),
        below.len(),
        "sub-SQL region must form a single valley"
    );

    // backward stays above the SQL on the same grid
    let mut bwd_profile = p.clone();
    bwd_profile.drive.direction = Direction::Backward;
    let bwd_spec = SweepSpec {
        profile: bwd_profile,
        metric: SweepMetric::NoiseRatio,
        axes,
        omega: TAU * 1.0e3,
        angle: AnglePolicy::Fixed(FRAC_PI_2),
    };
    let bwd_result = sweep(&bwd_spec).unwrap();
    assert!(
        bwd_result.masked.iter().all(|&m| !m),
        "backward grid must be fully stable"
    );
    let bwd_min = bwd_result
        .values
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    assert!(bwd_min > 1.0, "backward minimum ratio {bwd_min}");

    println!(
        "criterion 7 (sub-SQL valley): PASS - forward min ratio {min_ratio:.4} interior at \
         omega/2pi = {f_min_hz:.3e} Hz (nu = {nu_scan} Hz), single valley of {} cells, \
         backward minimum {bwd_min:.4} > 1",
        below.len()
    );
}

/// Criterion 8: quantum-advantage structure. The static sensor never beats
/// its own SQL; only the forward spinning drive gains, with an interior
/// optimum over the spin rate. The reference targets (> 15 dB advantage,
/// xi ~ 1e3) are printed next to the achieved values; they depend on an
/// unpublished parameter set and are not gates.
#[test]
fn acceptance_08_quantum_advantage() {
    let p = Profile::default();
    let grid = p.grids.omega_grid().unwrap();

    // static self-comparison
    let stat = SensorModel::new(p.params.clone(), p.drive.with_rotation(0.0)).unwrap();
    let static_records = evaluate_grid(&stat, &grid, AnglePolicy::Fixed(FRAC_PI_2)).unwrap();
    let mut static_max = f64::NEG_INFINITY;
    for r in &static_records {
        static_max = static_max.max(quantum_advantage(r, r.n_sql));
    }
    assert!(
        static_max <= 1e-9,
        "static self-comparison reached {static_max} dB"
    );

    // advantage over the spin grid at the reference frequency, both directions
    let omega = TAU * 1.0e3;
    let nus = spincom::profile::linspace(p.grids.nu_min_hz, p.grids.nu_max_hz, 100);
    let mut adv_fwd = Vec::with_capacity(nus.len());
    let mut adv_bwd = Vec::with_capacity(nus.len());
    for &nu in &nus {
        let fwd = SensorModel::new(
            p.params.clone(),
            p.drive.with_direction(Direction::Forward).with_rotation(nu),
        )
        .unwrap();
        let bwd = SensorModel::new(
            p.params.clone(),
            p.drive
                .with_direction(Direction::Backward)
                .with_rotation(nu),
        )
        .unwrap();
        let rf = evaluate_record(&fwd, omega, AnglePolicy::Fixed(FRAC_PI_2)).unwrap();
        let rb = evaluate_record(&bwd, omega, AnglePolicy::Fixed(FRAC_PI_2)).unwrap();
        adv_fwd.push(quantum_advantage(&rf, rf.n_sql));
        adv_bwd.push(quantum_advantage(&rb, rb.n_sql));
    }
    let (k_max, &best_fwd) = adv_fwd
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .unwrap();
    assert!(
        best_fwd > 0.0,
        "forward advantage must be positive somewhere"
    );
    assert!(
        k_max > 0 && k_max < nus.len() - 1,
        "forward optimum must be interior in nu_rot"
    );
    let best_bwd = adv_bwd.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    assert!(
        best_bwd < 0.0,
        "backward advantage must stay negative, got {best_bwd}"
    );

    // enhancement factor at the user-chosen spin rate and at the best one
    let xi_at = |nu: f64| {
        let spin = SensorModel::new(
            p.params.clone(),
            p.drive.with_direction(Direction::Forward).with_rotation(nu),
        )
        .unwrap();
        let records = evaluate_grid(&spin, &grid, AnglePolicy::Fixed(FRAC_PI_2)).unwrap();
        enhancement_factor(&static_records, &records).unwrap()
    };
    let xi_user = xi_at(p.drive.rotation_frequency);
    let xi_best = xi_at(nus[k_max]);

    println!(
        "criterion 8 (quantum advantage): PASS - static self-comparison max {static_max:.2e} dB; \
         achieved forward optimum {best_fwd:+.3} dB at nu = {:.0} Hz (reference target > 15 dB); \
         backward max {best_bwd:+.3} dB; xi(default nu) = {xi_user:.3}, xi(best nu) = {xi_best:.3} \
         (reference target ~1e3)",
        nus[k_max]
    );
}
