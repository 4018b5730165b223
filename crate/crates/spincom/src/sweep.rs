//! Grid sweeps over rotation rate, homodyne angle and Fourier frequency,
//! plus derivative-free refinement of grid optima.
//!
//! Grid points are evaluated in index order (outer axis first), so two runs
//! of the same spec produce bit-identical tables. Unstable points are masked
//! rather than fatal; a sweep only fails when nothing at all is evaluable.

use crate::metrics::qnr_from_sqz;
use crate::model::SensorModel;
use crate::profile::{linspace, Profile};
use crate::spectra::{self, AnglePolicy};
use crate::{Error, Result};

/// Parameter axis of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// Rotation rate nu_rot, Hz.
    NuRot,
    /// Homodyne angle, rad.
    PhiLo,
    /// Fourier frequency omega, rad/s.
    Omega,
}

impl SweepAxis {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepAxis::NuRot => "nu_rot_hz",
            SweepAxis::PhiLo => "phi_lo_rad",
            SweepAxis::Omega => "omega_rads",
        }
    }
}

impl std::str::FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nu_rot" => Ok(SweepAxis::NuRot),
            "phi_lo" => Ok(SweepAxis::PhiLo),
            "omega" => Ok(SweepAxis::Omega),
            other => Err(Error::Validation(format!(
                "axis must be nu_rot, phi_lo or omega, got `{other}`"
            ))),
        }
    }
}

/// One axis with its grid values.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisGrid {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

impl AxisGrid {
    pub fn linear(axis: SweepAxis, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n == 0 || hi < lo {
            return Err(Error::Validation(
                "axis grid needs n >= 1 and hi >= lo".into(),
            ));
        }
        Ok(AxisGrid {
            axis,
            values: linspace(lo, hi, n),
        })
    }

    pub fn logarithmic(axis: SweepAxis, lo: f64, hi: f64, n: usize) -> Result<Self> {
        if n == 0 || hi < lo || lo <= 0.0 {
            return Err(Error::Validation(
                "log axis grid needs n >= 1 and 0 < lo <= hi".into(),
            ));
        }
        Ok(AxisGrid {
            axis,
            values: linspace(lo.ln(), hi.ln(), n)
                .into_iter()
                .map(f64::exp)
                .collect(),
        })
    }
}

/// What a sweep evaluates at each grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepMetric {
    /// QNR between forward and backward squeezing spectra.
    Qnr,
    /// Degree of squeezing of the configured direction.
    SqueezeDb,
    /// Added noise quanta of the configured direction.
    AddedNoise,
    /// Added noise over the SQL, `n_add / n_SQL`.
    NoiseRatio,
    /// Quantum advantage in dB over the static SQL floor.
    AdvantageDb,
}

impl std::str::FromStr for SweepMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qnr" => Ok(SweepMetric::Qnr),
            "squeeze_db" => Ok(SweepMetric::SqueezeDb),
            "n_add" => Ok(SweepMetric::AddedNoise),
            "noise_ratio" => Ok(SweepMetric::NoiseRatio),
            "advantage_db" => Ok(SweepMetric::AdvantageDb),
            other => Err(Error::Validation(format!(
                "metric must be one of qnr, squeeze_db, n_add, noise_ratio, advantage_db; got `{other}`"
            ))),
        }
    }
}

/// Full sweep request: base profile plus one or two axes.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub profile: Profile,
    pub metric: SweepMetric,
    pub axes: Vec<AxisGrid>,
    /// Fourier frequency used when `Omega` is not an axis, rad/s.
    pub omega: f64,
    /// Angle policy used when `PhiLo` is not an axis.
    pub angle: AnglePolicy,
}

/// Dense table of metric values over the grid product.
#[derive(Debug, Clone)]
pub struct SweepResult {
    pub axes: Vec<AxisGrid>,
    /// Row-major over the axis product; NaN where masked.
    pub values: Vec<f64>,
    pub masked: Vec<bool>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid coordinates of a flat index.
    pub fn coords(&self, mut idx: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.axes.len());
        for k in (0..self.axes.len()).rev() {
            let n = self.axes[k].values.len();
            out.push(self.axes[k].values[idx % n]);
            idx /= n;
        }
        out.reverse();
        out
    }

    fn arg_by(&self, better: impl Fn(f64, f64) -> bool) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (i, (&v, &m)) in self.values.iter().zip(&self.masked).enumerate() {
            if m || v.is_nan() {
                continue;
            }
            // strict improvement keeps the lowest index on ties
            match best {
                Some((_, bv)) if !better(v, bv) => {}
                _ if best.is_some() => best = Some((i, v)),
                _ => best = Some((i, v)),
            }
        }
        best
    }

    /// Lowest-index maximizer among unmasked points.
    pub fn argmax(&self) -> Option<(usize, f64)> {
        self.arg_by(|a, b| a > b)
    }

    /// Lowest-index minimizer among unmasked points.
    pub fn argmin(&self) -> Option<(usize, f64)> {
        self.arg_by(|a, b| a < b)
    }
}

/// Evaluate a metric at explicit coordinates.
fn eval_metric(
    profile: &Profile,
    metric: SweepMetric,
    nu_rot: f64,
    omega: f64,
    angle: AnglePolicy,
) -> Result<f64> {
    let drive = profile.drive.with_rotation(nu_rot);
    match metric {
        SweepMetric::Qnr => {
            let fwd = SensorModel::new(
                profile.params.clone(),
                drive.with_direction(crate::model::Direction::Forward),
            )?;
            let bwd = SensorModel::new(
                profile.params.clone(),
                drive.with_direction(crate::model::Direction::Backward),
            )?;
            let phi = spectra::resolve_angle(&fwd, omega, angle)?;
            let (s_f, _) = spectra::squeezing_spectrum(&fwd, omega, phi)?;
            let (s_b, _) = spectra::squeezing_spectrum(&bwd, omega, phi)?;
            qnr_from_sqz(s_f, s_b)
        }
        _ => {
            let sensor = SensorModel::new(profile.params.clone(), drive)?;
            let record = spectra::evaluate_record(&sensor, omega, angle)?;
            Ok(match metric {
                SweepMetric::SqueezeDb => record.squeeze_db,
                SweepMetric::AddedNoise => record.n_add,
                SweepMetric::NoiseRatio => record.n_add / record.n_sql,
                SweepMetric::AdvantageDb => {
                    crate::metrics::quantum_advantage(&record, record.n_sql)
                }
                SweepMetric::Qnr => unreachable!(),
            })
        }
    }
}

/// Dense deterministic evaluation over the axis product.
pub fn sweep(spec: &SweepSpec) -> Result<SweepResult> {
    if spec.axes.is_empty() || spec.axes.len() > 2 {
        return Err(Error::Validation("sweep needs one or two axes".to_string()));
    }
    if spec.axes.iter().any(|a| a.values.is_empty()) {
        return Err(Error::EmptyScan(
            "sweep axis has no grid points".to_string(),
        ));
    }

    let total: usize = spec.axes.iter().map(|a| a.values.len()).product();
    let mut values = Vec::with_capacity(total);
    let mut masked = Vec::with_capacity(total);

    let outer: &[f64] = &spec.axes[0].values;
    let inner: &[f64] = if spec.axes.len() == 2 {
        &spec.axes[1].values
    } else {
        &[f64::NAN]
    };
    let inner_real = spec.axes.len() == 2;

    for &a in outer {
        for &b in inner.iter().take(if inner_real { inner.len() } else { 1 }) {
            let mut nu = spec.profile.drive.rotation_frequency;
            let mut omega = spec.omega;
            let mut angle = spec.angle;
            let mut assign = |axis: SweepAxis, v: f64| match axis {
                SweepAxis::NuRot => nu = v,
                SweepAxis::Omega => omega = v,
                SweepAxis::PhiLo => angle = AnglePolicy::Fixed(v),
            };
            assign(spec.axes[0].axis, a);
            if inner_real {
                assign(spec.axes[1].axis, b);
            }
            match eval_metric(&spec.profile, spec.metric, nu, omega, angle) {
                Ok(v) => {
                    values.push(v);
                    masked.push(false);
                }
                Err(Error::Unstable { .. }) | Err(Error::BlindSensor { .. }) => {
                    values.push(f64::NAN);
                    masked.push(true);
                }
                Err(e) => return Err(e),
            }
        }
    }

    if masked.iter().all(|&m| m) {
        return Err(Error::NoStablePoint);
    }

    Ok(SweepResult {
        axes: spec.axes.clone(),
        values,
        masked,
    })
}

const GOLDEN_RATIO: f64 = 1.618_033_988_749_895;

/// Golden-section minimization of `f` on `[lo, hi]` after a coarse scan.
///
/// `f` returns `None` on masked (unstable) points; the search needs at least
/// one evaluable coarse point. Deterministic for identical inputs.
pub fn minimize_scalar(
    f: impl Fn(f64) -> Option<f64>,
    lo: f64,
    hi: f64,
    tol: f64,
    coarse: usize,
) -> Result<(f64, f64)> {
    let n = coarse.max(3);
    let grid = linspace(lo, hi, n);
    let mut best: Option<(usize, f64)> = None;
    let evals: Vec<Option<f64>> = grid.iter().map(|&x| f(x)).collect();
    for (i, v) in evals.iter().enumerate() {
        if let Some(v) = v {
            if best.is_none_or(|(_, bv)| *v < bv) {
                best = Some((i, *v));
            }
        }
    }
    let (idx, _) = best.ok_or(Error::NoStablePoint)?;
    let mut a = grid[idx.saturating_sub(1)];
    let mut b = grid[(idx + 1).min(n - 1)];

    let resp = 2.0 - GOLDEN_RATIO;
    let masked_inf = |x: f64| f(x).unwrap_or(f64::INFINITY);
    let mut x1 = a + resp * (b - a);
    let mut x2 = b - resp * (b - a);
    let mut f1 = masked_inf(x1);
    let mut f2 = masked_inf(x2);
    for _ in 0..400 {
        if (b - a).abs() <= tol {
            break;
        }
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = a + resp * (b - a);
            f1 = masked_inf(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = b - resp * (b - a);
            f2 = masked_inf(x2);
        }
    }
    let (x, v) = if f1 < f2 { (x1, f1) } else { (x2, f2) };
    if v.is_infinite() {
        return Err(Error::NoStablePoint);
    }
    Ok((x, v))
}

/// Golden-section maximization.
pub fn maximize_scalar(
    f: impl Fn(f64) -> Option<f64>,
    lo: f64,
    hi: f64,
    tol: f64,
    coarse: usize,
) -> Result<(f64, f64)> {
    let (x, v) = minimize_scalar(|x| f(x).map(|v| -v), lo, hi, tol, coarse)?;
    Ok((x, -v))
}

/// Coarse grid scan followed by coordinate descent, each line search a
/// golden-section pass.
pub fn minimize_2d(
    f: impl Fn(f64, f64) -> Option<f64>,
    bounds: ((f64, f64), (f64, f64)),
    tol: f64,
    coarse: usize,
) -> Result<((f64, f64), f64)> {
    let n = coarse.max(3);
    let xs = linspace(bounds.0 .0, bounds.0 .1, n);
    let ys = linspace(bounds.1 .0, bounds.1 .1, n);
    let mut best: Option<((f64, f64), f64)> = None;
    for &x in &xs {
        for &y in &ys {
            if let Some(v) = f(x, y) {
                if best.is_none_or(|(_, bv)| v < bv) {
                    best = Some(((x, y), v));
                }
            }
        }
    }
    let (mut point, mut value) = best.ok_or(Error::NoStablePoint)?;

    for _ in 0..60 {
        let before = point;
        let (x, _) = minimize_scalar(|x| f(x, point.1), bounds.0 .0, bounds.0 .1, tol, n)?;
        point.0 = x;
        let (y, v) = minimize_scalar(|y| f(point.0, y), bounds.1 .0, bounds.1 .1, tol, n)?;
        point.1 = y;
        value = v;
        if (point.0 - before.0).abs() <= tol && (point.1 - before.1).abs() <= tol {
            break;
        }
    }
    Ok((point, value))
}

/// Maximization over two coordinates.
pub fn maximize_2d(
    f: impl Fn(f64, f64) -> Option<f64>,
    bounds: ((f64, f64), (f64, f64)),
    tol: f64,
    coarse: usize,
) -> Result<((f64, f64), f64)> {
    let ((x, y), v) = minimize_2d(|a, b| f(a, b).map(|v| -v), bounds, tol, coarse)?;
    Ok(((x, y), -v))
}

/// Metric closure shared by the optimizer entry points and the CLI.
pub fn metric_fn<'a>(
    profile: &'a Profile,
    metric: SweepMetric,
    omega: f64,
    angle: AnglePolicy,
) -> impl Fn(f64, Option<f64>) -> Option<f64> + 'a {
    move |nu: f64, phi: Option<f64>| {
        let angle = match phi {
            Some(p) => AnglePolicy::Fixed(p),
            None => angle,
        };
        match eval_metric(profile, metric, nu, omega, angle) {
            Ok(v) => Some(v),
            Err(Error::Unstable { .. }) | Err(Error::BlindSensor { .. }) => None,
            Err(_) => None,
        }
    }
}
