//! Command-line front end: profile loading, scans and deterministic CSV
//! output for every metric the library computes.

use clap::{Args, Parser, Subcommand};
use spincom::csvfmt::{float, CsvTable};
use spincom::gaussian::{
    quadrature_squeezing_witness, solve_lyapunov, wigner_projection, QuadraturePair,
};
use spincom::metrics::{enhancement_factor, qnr_from_sqz, quantum_advantage};
use spincom::model::{Direction, SensorModel};
use spincom::profile::{load_profile, serialize_profile, Profile};
use spincom::spectra::{
    evaluate_grid, evaluate_record, resolve_angle, squeezing_spectrum, AnglePolicy,
};
use spincom::sweep::{
    maximize_2d, maximize_scalar, metric_fn, minimize_2d, minimize_scalar, sweep, AxisGrid,
    SweepAxis, SweepMetric, SweepSpec,
};
use std::f64::consts::{PI, TAU};
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "spincom",
    version,
    about = "Spinning optomechanical sensor toolkit"
)]
struct Cli {
    /// Profile file; missing keys fall back to the built-in defaults.
    #[arg(short, long, global = true)]
    profile: Option<PathBuf>,

    /// Directory for CSV output files.
    #[arg(short, long, global = true, default_value = ".")]
    output: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a profile and print the derived working point.
    Validate(ValidateArgs),
    /// Per-frequency spectrum records over the profile's omega grid.
    Spectrum(SpectrumArgs),
    /// Squeezing versus spin rate for both drive directions.
    Squeeze(SqueezeArgs),
    /// Stationary covariance and Wigner-marginal ellipses.
    Wigner(WignerArgs),
    /// Quantum nonreciprocity ratio scans.
    Qnr(QnrArgs),
    /// Quantum advantage versus spin rate, plus enhancement factors.
    Advantage(AdvantageArgs),
    /// Generic metric sweep over one or two axes.
    Sweep(SweepArgs),
    /// Refine a metric optimum inside bounds.
    Optimize(OptimizeArgs),
}

#[derive(Args)]
struct ValidateArgs {
    /// Print the fully resolved profile in the on-disk format.
    #[arg(long)]
    dump: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Drive direction override.
    #[arg(long, value_parser = parse_direction)]
    direction: Option<Direction>,
    /// Spin rate override, Hz.
    #[arg(long)]
    nu_rot_hz: Option<f64>,
    /// Homodyne angle: radians, or `optimal` for the per-frequency
    /// squeezing-optimal angle.
    #[arg(long)]
    phi_lo: Option<String>,
}

#[derive(Args)]
struct SqueezeArgs {
    /// Fourier frequency, Hz.
    #[arg(long, default_value_t = 1.0e3)]
    omega_hz: f64,
}

#[derive(Args)]
struct WignerArgs {
    #[arg(long, value_parser = parse_direction)]
    direction: Option<Direction>,
    #[arg(long)]
    nu_rot_hz: Option<f64>,
    /// Restrict to one marginal: optical, mechanical or cross.
    #[arg(long, value_parser = parse_pair)]
    pair: Option<QuadraturePair>,
}

#[derive(Args)]
struct QnrArgs {
    /// Fourier frequency, Hz.
    #[arg(long, default_value_t = 1.0e3)]
    omega_hz: f64,
    /// Homodyne angle: radians or `optimal` (resolved on the forward drive).
    #[arg(long)]
    phi_lo: Option<String>,
    /// Sweep axes: `nu_rot` or `nu_rot,phi_lo`.
    #[arg(long, default_value = "nu_rot")]
    sweep: String,
}

#[derive(Args)]
struct AdvantageArgs {
    /// Fourier frequency, Hz.
    #[arg(long, default_value_t = 1.0e3)]
    omega_hz: f64,
    /// Homodyne angle: radians or `optimal`.
    #[arg(long)]
    phi_lo: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    /// Metric: qnr, squeeze_db, n_add, noise_ratio or advantage_db.
    #[arg(long, value_parser = parse_metric)]
    metric: SweepMetric,
    /// Axes: one of nu_rot, phi_lo, omega, or two comma-separated.
    #[arg(long)]
    axes: String,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Fixed Fourier frequency when omega is not an axis, Hz.
    #[arg(long, default_value_t = 1.0e3)]
    omega_hz: f64,
    /// Fixed homodyne angle when phi_lo is not an axis.
    #[arg(long)]
    phi_lo: Option<String>,
    #[arg(long, value_parser = parse_direction)]
    direction: Option<Direction>,
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(long, value_parser = parse_metric)]
    metric: SweepMetric,
    /// Axes to optimize over: nu_rot, phi_lo or nu_rot,phi_lo.
    #[arg(long, default_value = "nu_rot")]
    axes: String,
    #[command(flatten)]
    bounds: BoundsArgs,
    /// Maximize instead of minimize (defaults to the metric's natural goal).
    #[arg(long)]
    goal: Option<Goal>,
    /// Refinement tolerance on the arguments.
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 1.0e3)]
    omega_hz: f64,
    #[arg(long)]
    phi_lo: Option<String>,
    #[arg(long, value_parser = parse_direction)]
    direction: Option<Direction>,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Goal {
    Min,
    Max,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    nu_min_hz: Option<f64>,
    #[arg(long)]
    nu_max_hz: Option<f64>,
    #[arg(long)]
    nu_points: Option<usize>,
    #[arg(long, default_value_t = 0.0)]
    phi_min_rad: f64,
    #[arg(long, default_value_t = PI)]
    phi_max_rad: f64,
    #[arg(long)]
    phi_points: Option<usize>,
    #[arg(long)]
    omega_min_hz: Option<f64>,
    #[arg(long)]
    omega_max_hz: Option<f64>,
    #[arg(long)]
    omega_points: Option<usize>,
}

fn parse_direction(s: &str) -> Result<Direction, spincom::Error> {
    s.parse()
}

fn parse_pair(s: &str) -> Result<QuadraturePair, spincom::Error> {
    s.parse()
}

fn parse_metric(s: &str) -> Result<SweepMetric, spincom::Error> {
    s.parse()
}

fn metric_name(metric: SweepMetric) -> &'static str {
    match metric {
        SweepMetric::Qnr => "qnr",
        SweepMetric::SqueezeDb => "squeeze_db",
        SweepMetric::AddedNoise => "n_add",
        SweepMetric::NoiseRatio => "noise_ratio",
        SweepMetric::AdvantageDb => "advantage_db",
    }
}

fn parse_angle(raw: &Option<String>, fallback: f64) -> Result<AnglePolicy, spincom::Error> {
    match raw.as_deref() {
        None => Ok(AnglePolicy::Fixed(fallback)),
        Some("optimal") => Ok(AnglePolicy::Optimal),
        Some(text) => text.parse::<f64>().map(AnglePolicy::Fixed).map_err(|_| {
            spincom::Error::Validation(format!(
                "--phi-lo expects radians or `optimal`, got `{text}`"
            ))
        }),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let color = std::io::stderr().is_terminal() && std::env::var_os("NO_COLOR").is_none();
            if color {
                eprintln!("\u{1b}[31merror:\u{1b}[0m {err}");
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn run(cli: &Cli) -> Result<(), spincom::Error> {
    let profile = match &cli.profile {
        Some(path) => load_profile(path)?,
        None => Profile::default(),
    };
    match &cli.command {
        Command::Validate(args) => validate(&profile, args),
        Command::Spectrum(args) => spectrum(&profile, args, &cli.output),
        Command::Squeeze(args) => squeeze(&profile, args, &cli.output),
        Command::Wigner(args) => wigner(&profile, args, &cli.output),
        Command::Qnr(args) => qnr_cmd(&profile, args, &cli.output),
        Command::Advantage(args) => advantage(&profile, args, &cli.output),
        Command::Sweep(args) => sweep_cmd(&profile, args, &cli.output),
        Command::Optimize(args) => optimize_cmd(&profile, args, &cli.output),
    }
}

fn write_csv(dir: &Path, name: &str, table: CsvTable) -> Result<PathBuf, spincom::Error> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, table.finish())?;
    Ok(path)
}

fn sensor_for(
    profile: &Profile,
    direction: Option<Direction>,
    nu_rot: Option<f64>,
) -> Result<SensorModel, spincom::Error> {
    let mut drive = profile.drive.clone();
    if let Some(d) = direction {
        drive.direction = d;
    }
    if let Some(nu) = nu_rot {
        drive = drive.with_rotation(nu);
    }
    SensorModel::new(profile.params.clone(), drive)
}

fn validate(profile: &Profile, args: &ValidateArgs) -> Result<(), spincom::Error> {
    if args.dump {
        print!("{}", serialize_profile(profile));
        return Ok(());
    }
    let sensor = sensor_for(profile, None, None)?;
    let other = sensor_for(profile, Some(sensor.drive.direction.opposite()), None)?;
    let st = &sensor.steady;
    println!("profile: {}", profile.provenance);
    println!(
        "  direction           : {}",
        sensor.drive.direction.as_str()
    );
    println!(
        "  nu_rot              : {} Hz",
        st_float(sensor.drive.rotation_frequency)
    );
    println!(
        "  sagnac shift        : {} rad/s ({} x kappa)",
        st_float(st.sagnac_shift),
        st_float(st.sagnac_shift / sensor.params.total_decay)
    );
    println!("  photon number       : {}", st_float(st.photon_number));
    println!(
        "  enhanced coupling g : {} rad/s",
        st_float(st.enhanced_coupling)
    );
    println!("  cavity phase        : {} rad", st_float(st.cavity_phase));
    println!("  thermal occupancy   : {}", st_float(st.thermal_occupancy));
    println!(
        "  stability abscissa  : {} rad/s ({})",
        st_float(sensor.stability.abscissa),
        if sensor.stability.stable {
            "stable"
        } else {
            "UNSTABLE"
        }
    );
    println!(
        "  opposite direction  : abscissa {} rad/s ({})",
        st_float(other.stability.abscissa),
        if other.stability.stable {
            "stable"
        } else {
            "UNSTABLE"
        }
    );
    if !sensor.stability.stable && !profile.allow_unstable {
        return Err(spincom::Error::Unstable {
            abscissa: sensor.stability.abscissa,
        });
    }
    Ok(())
}

fn st_float(x: f64) -> String {
    format!("{x:.6e}")
}

fn spectrum(profile: &Profile, args: &SpectrumArgs, out: &Path) -> Result<(), spincom::Error> {
    let sensor = sensor_for(profile, args.direction, args.nu_rot_hz)?;
    let policy = parse_angle(&args.phi_lo, profile.drive.homodyne_angle)?;
    let grid = profile.grids.omega_grid()?;
    let records = evaluate_grid(&sensor, &grid, policy)?;

    let mut table = CsvTable::new(&[
        "omega_hz",
        "s_qq",
        "s_pp",
        "s_qp",
        "r_m",
        "n_add",
        "n_sql",
        "s_ff",
        "s_qz",
        "squeeze_db",
    ]);
    for r in &records {
        table.float_row(&[
            r.omega / TAU,
            r.s_qq_out,
            r.s_pp_out,
            r.s_qp_out,
            r.r_m,
            r.n_add,
            r.n_sql,
            r.s_ff,
            r.s_qz,
            r.squeeze_db,
        ]);
    }
    let path = write_csv(out, "spectrum.csv", table)?;
    let best = records
        .iter()
        .min_by(|a, b| (a.n_add / a.n_sql).total_cmp(&(b.n_add / b.n_sql)))
        .expect("grid has at least 2 points");
    println!(
        "spectrum: {} rows -> {}; best n_add/n_SQL = {} at omega/2pi = {} Hz",
        records.len(),
        path.display(),
        st_float(best.n_add / best.n_sql),
        st_float(best.omega / TAU)
    );
    Ok(())
}

fn squeeze(profile: &Profile, args: &SqueezeArgs, out: &Path) -> Result<(), spincom::Error> {
    let omega = TAU * args.omega_hz;
    let mut table = CsvTable::new(&[
        "nu_rot_hz",
        "phi_opt_rad",
        "s_qz_fwd",
        "squeeze_db_fwd",
        "s_qz_bwd",
        "squeeze_db_bwd",
        "qnr_db",
    ]);
    let mut best: Option<(f64, f64)> = None;
    for nu in profile.grids.nu_values() {
        let fwd = sensor_for(profile, Some(Direction::Forward), Some(nu))?;
        let bwd = sensor_for(profile, Some(Direction::Backward), Some(nu))?;
        if !fwd.stability.stable || !bwd.stability.stable {
            if profile.allow_unstable {
                table.row(&[
                    float(nu),
                    "nan".into(),
                    "nan".into(),
                    "nan".into(),
                    "nan".into(),
                    "nan".into(),
                    "nan".into(),
                ]);
                continue;
            }
            return Err(spincom::Error::Unstable {
                abscissa: fwd.stability.abscissa.max(bwd.stability.abscissa),
            });
        }
        let phi = resolve_angle(&fwd, omega, AnglePolicy::Optimal)?;
        let (s_f, db_f) = squeezing_spectrum(&fwd, omega, phi)?;
        let (s_b, db_b) = squeezing_spectrum(&bwd, omega, phi)?;
        let q = qnr_from_sqz(s_f, s_b)?;
        if best.is_none_or(|(_, bq)| q > bq) {
            best = Some((nu, q));
        }
        table.float_row(&[nu, phi, s_f, db_f, s_b, db_b, q]);
    }
    let path = write_csv(out, "squeeze.csv", table)?;
    let (nu_best, q_best) = best.expect("nu grid nonempty");
    println!(
        "squeeze: scan over {} spin rates -> {}; best QNR {} at nu = {} Hz",
        profile.grids.nu_points,
        path.display(),
        st_float(q_best),
        st_float(nu_best)
    );
    Ok(())
}

fn wigner(profile: &Profile, args: &WignerArgs, out: &Path) -> Result<(), spincom::Error> {
    let sensor = sensor_for(profile, args.direction, args.nu_rot_hz)?;
    let cov = solve_lyapunov(&sensor.linear)?;
    let pairs: Vec<QuadraturePair> = match args.pair {
        Some(p) => vec![p],
        None => vec![
            QuadraturePair::Optical,
            QuadraturePair::Mechanical,
            QuadraturePair::Cross,
        ],
    };
    let mut table = CsvTable::new(&[
        "pair",
        "v_xx",
        "v_xy",
        "v_yy",
        "semi_minor",
        "semi_major",
        "angle_rad",
    ]);
    for pair in pairs {
        let proj = wigner_projection(&cov, pair)?;
        table.row(&[
            pair.as_str().to_string(),
            float(proj.covariance[(0, 0)]),
            float(proj.covariance[(0, 1)]),
            float(proj.covariance[(1, 1)]),
            float(proj.semi_minor),
            float(proj.semi_major),
            float(proj.angle),
        ]);
    }
    let path = write_csv(out, "wigner.csv", table)?;
    let (min_var, squeezed) = quadrature_squeezing_witness(&cov);
    println!(
        "wigner: {} -> {}; optical min variance {} ({})",
        sensor.drive.direction.as_str(),
        path.display(),
        st_float(min_var),
        if squeezed { "squeezed" } else { "not squeezed" }
    );
    Ok(())
}

fn qnr_cmd(profile: &Profile, args: &QnrArgs, out: &Path) -> Result<(), spincom::Error> {
    let omega = TAU * args.omega_hz;
    let policy = parse_angle(&args.phi_lo, profile.drive.homodyne_angle)?;
    match args.sweep.as_str() {
        "nu_rot" => {
            let mut table = CsvTable::new(&["nu_rot_hz", "qnr_db"]);
            let f = metric_fn(profile, SweepMetric::Qnr, omega, policy);
            for nu in profile.grids.nu_values() {
                match f(nu, None) {
                    Some(q) => table.float_row(&[nu, q]),
                    None => table.row(&[float(nu), "nan".into()]),
                }
            }
            let path = write_csv(out, "qnr.csv", table)?;
            println!("qnr: 1-D scan -> {}", path.display());
        }
        "nu_rot,phi_lo" => {
            let axes = vec![
                AxisGrid::linear(
                    SweepAxis::NuRot,
                    profile.grids.nu_min_hz,
                    profile.grids.nu_max_hz,
                    profile.grids.nu_points,
                )?,
                AxisGrid::linear(SweepAxis::PhiLo, 0.0, PI, profile.grids.phi_points)?,
            ];
            let spec = SweepSpec {
                profile: profile.clone(),
                metric: SweepMetric::Qnr,
                axes,
                omega,
                angle: policy,
            };
            let result = sweep(&spec)?;
            let mut table = CsvTable::new(&["nu_rot_hz", "phi_lo_rad", "qnr_db"]);
            for k in 0..result.len() {
                let coords = result.coords(k);
                table.float_row(&[coords[0], coords[1], result.values[k]]);
            }
            let path = write_csv(out, "qnr_sweep.csv", table)?;
            let (k, v) = result.argmax().expect("sweep has live points");
            let coords = result.coords(k);
            println!(
                "qnr: 2-D sweep -> {}; optimum {} at nu = {} Hz, phi = {} rad",
                path.display(),
                st_float(v),
                st_float(coords[0]),
                st_float(coords[1])
            );
        }
        other => {
            return Err(spincom::Error::Validation(format!(
                "--sweep must be `nu_rot` or `nu_rot,phi_lo`, got `{other}`"
            )))
        }
    }
    Ok(())
}

fn advantage(profile: &Profile, args: &AdvantageArgs, out: &Path) -> Result<(), spincom::Error> {
    let omega = TAU * args.omega_hz;
    let policy = parse_angle(&args.phi_lo, std::f64::consts::FRAC_PI_2)?;
    let mut table = CsvTable::new(&["nu_rot_hz", "advantage_db_fwd", "advantage_db_bwd"]);
    let mut best: Option<(f64, f64)> = None;
    for nu in profile.grids.nu_values() {
        let mut row = vec![float(nu)];
        for direction in [Direction::Forward, Direction::Backward] {
            let sensor = sensor_for(profile, Some(direction), Some(nu))?;
            if !sensor.stability.stable {
                row.push("nan".into());
                continue;
            }
            let record = evaluate_record(&sensor, omega, policy)?;
            let adv = quantum_advantage(&record, record.n_sql);
            if direction == Direction::Forward && best.is_none_or(|(_, b)| adv > b) {
                best = Some((nu, adv));
            }
            row.push(float(adv));
        }
        table.row(&row);
    }
    let path = write_csv(out, "advantage.csv", table)?;

    // enhancement factor at the profile spin rate and at the best one
    let grid = profile.grids.omega_grid()?;
    let static_records = {
        let sensor = sensor_for(profile, Some(Direction::Forward), Some(0.0))?;
        evaluate_grid(&sensor, &grid, policy)?
    };
    let xi_at = |nu: f64| -> Result<f64, spincom::Error> {
        let sensor = sensor_for(profile, Some(Direction::Forward), Some(nu))?;
        let records = evaluate_grid(&sensor, &grid, policy)?;
        enhancement_factor(&static_records, &records)
    };
    let (nu_best, adv_best) = best.expect("nu grid nonempty");
    let xi_user = xi_at(profile.drive.rotation_frequency)?;
    let xi_best = xi_at(nu_best)?;
    // the spin rate with the best squeezing nonreciprocity, for comparison
    let qnr = metric_fn(profile, SweepMetric::Qnr, omega, AnglePolicy::Optimal);
    let (nu_qnr, _) = maximize_scalar(
        |nu| qnr(nu, None),
        profile.grids.nu_min_hz,
        profile.grids.nu_max_hz,
        1.0,
        25,
    )?;
    let xi_qnr = xi_at(nu_qnr)?;
    println!(
        "advantage: -> {}; forward optimum {} dB at nu = {} Hz; xi(profile nu) = {}, \
         xi(best-advantage nu) = {}, xi(best-QNR nu = {} Hz) = {}",
        path.display(),
        st_float(adv_best),
        st_float(nu_best),
        st_float(xi_user),
        st_float(xi_best),
        st_float(nu_qnr),
        st_float(xi_qnr)
    );
    Ok(())
}

fn build_axis(
    axis: SweepAxis,
    bounds: &BoundsArgs,
    profile: &Profile,
) -> Result<AxisGrid, spincom::Error> {
    match axis {
        SweepAxis::NuRot => AxisGrid::linear(
            axis,
            bounds.nu_min_hz.unwrap_or(profile.grids.nu_min_hz),
            bounds.nu_max_hz.unwrap_or(profile.grids.nu_max_hz),
            bounds.nu_points.unwrap_or(profile.grids.nu_points),
        ),
        SweepAxis::PhiLo => AxisGrid::linear(
            axis,
            bounds.phi_min_rad,
            bounds.phi_max_rad,
            bounds.phi_points.unwrap_or(profile.grids.phi_points),
        ),
        SweepAxis::Omega => AxisGrid::logarithmic(
            axis,
            TAU * bounds.omega_min_hz.unwrap_or(profile.grids.omega_min_hz),
            TAU * bounds.omega_max_hz.unwrap_or(profile.grids.omega_max_hz),
            bounds.omega_points.unwrap_or(profile.grids.omega_points),
        ),
    }
}

fn parse_axes(text: &str) -> Result<Vec<SweepAxis>, spincom::Error> {
    text.split(',').map(|s| s.trim().parse()).collect()
}

fn sweep_cmd(profile: &Profile, args: &SweepArgs, out: &Path) -> Result<(), spincom::Error> {
    let axes_list = parse_axes(&args.axes)?;
    let mut profile = profile.clone();
    if let Some(d) = args.direction {
        profile.drive.direction = d;
    }
    let axes = axes_list
        .iter()
        .map(|&a| build_axis(a, &args.bounds, &profile))
        .collect::<Result<Vec<_>, _>>()?;
    let policy = parse_angle(&args.phi_lo, profile.drive.homodyne_angle)?;
    let spec = SweepSpec {
        profile,
        metric: args.metric,
        axes,
        omega: TAU * args.omega_hz,
        angle: policy,
    };
    let result = sweep(&spec)?;

    let mut header: Vec<&str> = spec.axes.iter().map(|a| a.axis.as_str()).collect();
    header.push("value");
    header.push("masked");
    let mut table = CsvTable::new(&header);
    for k in 0..result.len() {
        let mut row: Vec<String> = result.coords(k).iter().map(|&c| float(c)).collect();
        row.push(float(result.values[k]));
        row.push(if result.masked[k] {
            "1".into()
        } else {
            "0".into()
        });
        table.row(&row);
    }
    let path = write_csv(out, "sweep.csv", table)?;
    let masked = result.masked.iter().filter(|&&m| m).count();
    let (kmin, vmin) = result.argmin().expect("live points");
    let (kmax, vmax) = result.argmax().expect("live points");
    println!(
        "sweep: {} points ({} masked) -> {}; min {} at {:?}, max {} at {:?}",
        result.len(),
        masked,
        path.display(),
        st_float(vmin),
        result.coords(kmin),
        st_float(vmax),
        result.coords(kmax)
    );
    Ok(())
}

fn optimize_cmd(profile: &Profile, args: &OptimizeArgs, out: &Path) -> Result<(), spincom::Error> {
    let axes = parse_axes(&args.axes)?;
    let mut profile = profile.clone();
    if let Some(d) = args.direction {
        profile.drive.direction = d;
    }
    let policy = parse_angle(&args.phi_lo, profile.drive.homodyne_angle)?;
    let omega = TAU * args.omega_hz;
    let maximize = match args.goal {
        Some(Goal::Max) => true,
        Some(Goal::Min) => false,
        None => matches!(
            args.metric,
            SweepMetric::Qnr | SweepMetric::SqueezeDb | SweepMetric::AdvantageDb
        ),
    };
    let f = metric_fn(&profile, args.metric, omega, policy);

    let nu_bounds = (
        args.bounds.nu_min_hz.unwrap_or(profile.grids.nu_min_hz),
        args.bounds.nu_max_hz.unwrap_or(profile.grids.nu_max_hz),
    );
    let phi_bounds = (args.bounds.phi_min_rad, args.bounds.phi_max_rad);

    // (nu, phi, value); unused coordinate reported as nan
    let (nu_opt, phi_opt, value) = match axes.as_slice() {
        [SweepAxis::NuRot] => {
            let g = |nu: f64| f(nu, None);
            let (x, v) = if maximize {
                maximize_scalar(g, nu_bounds.0, nu_bounds.1, args.tol, 33)?
            } else {
                minimize_scalar(g, nu_bounds.0, nu_bounds.1, args.tol, 33)?
            };
            (x, f64::NAN, v)
        }
        [SweepAxis::PhiLo] => {
            let nu = profile.drive.rotation_frequency;
            let g = |phi: f64| f(nu, Some(phi));
            let (x, v) = if maximize {
                maximize_scalar(g, phi_bounds.0, phi_bounds.1, args.tol, 33)?
            } else {
                minimize_scalar(g, phi_bounds.0, phi_bounds.1, args.tol, 33)?
            };
            (f64::NAN, x, v)
        }
        [SweepAxis::NuRot, SweepAxis::PhiLo] => {
            let g = |nu: f64, phi: f64| f(nu, Some(phi));
            let ((nu, phi), v) = if maximize {
                maximize_2d(g, (nu_bounds, phi_bounds), args.tol, 17)?
            } else {
                minimize_2d(g, (nu_bounds, phi_bounds), args.tol, 17)?
            };
            (nu, phi, v)
        }
        _ => {
            return Err(spincom::Error::Validation(
                "optimize supports axes nu_rot, phi_lo or nu_rot,phi_lo".to_string(),
            ))
        }
    };

    let mut table = CsvTable::new(&["metric", "goal", "nu_rot_hz", "phi_lo_rad", "value"]);
    table.row(&[
        metric_name(args.metric).to_string(),
        if maximize { "max".into() } else { "min".into() },
        float(nu_opt),
        float(phi_opt),
        float(value),
    ]);
    let path = write_csv(out, "optimize.csv", table)?;
    let mut at = String::new();
    if !nu_opt.is_nan() {
        at.push_str(&format!("nu = {} Hz", st_float(nu_opt)));
    }
    if !phi_opt.is_nan() {
        if !at.is_empty() {
            at.push_str(", ");
        }
        at.push_str(&format!("phi = {} rad", st_float(phi_opt)));
    }
    println!(
        "optimize: {} value {} at {} -> {}",
        if maximize { "maximum" } else { "minimum" },
        st_float(value),
        at,
        path.display()
    );
    Ok(())
}
