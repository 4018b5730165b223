use super::susceptibility::intracavity_spectrum;
use crate::model::LinearModel;
use crate::Result;
use nalgebra::Vector4;

/// Frequency integral of the intracavity spectrum diagonals,
/// `(1/2pi) * \int_{-omega_hi}^{omega_hi} S_ii(omega) d omega` restricted to
/// `|omega| >= omega_lo` plus the small `[0, omega_lo]` sliver, evaluated by
/// adaptive Simpson quadrature.
///
/// The spectra are even in omega, so only the positive axis is integrated.
/// Initial panel boundaries are seeded at every decade and around each
/// resonance of the drift matrix (center `|Im lambda|`, width `|Re lambda|`),
/// which keeps the narrow mechanical line from slipping between nodes.
pub fn integrate_intracavity_diagonal(
    model: &LinearModel,
    omega_lo: f64,
    omega_hi: f64,
    rel_tol: f64,
) -> Result<Vector4<f64>> {
    let f = |w: f64| -> Result<Vector4<f64>> {
        let s = intracavity_spectrum(model, w)?;
        Ok(Vector4::new(
            s[(0, 0)].re,
            s[(1, 1)].re,
            s[(2, 2)].re,
            s[(3, 3)].re,
        ))
    };

    let mut nodes: Vec<f64> = vec![omega_lo, omega_hi];
    // decades
    let mut w = 1.0;
    while w < omega_hi {
        if w > omega_lo {
            nodes.push(w);
        }
        w *= 10.0;
    }
    // resonance neighbourhoods
    for eig in model.drift.complex_eigenvalues().iter() {
        let center = eig.im.abs();
        let width = eig.re.abs().max(1e-6 * center.max(1.0));
        if center == 0.0 {
            continue;
        }
        for k in [
            -300.0, -100.0, -30.0, -10.0, -3.0, -1.0, 0.0, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0,
        ] {
            let x = center + k * width;
            if x > omega_lo && x < omega_hi {
                nodes.push(x);
            }
        }
    }
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    // coarse estimate to set the absolute tolerance scale
    let mut coarse = Vector4::zeros();
    let mut cache: Vec<Vector4<f64>> = Vec::with_capacity(nodes.len());
    for &x in &nodes {
        cache.push(f(x)?);
    }
    for i in 0..nodes.len() - 1 {
        let (a, b) = (nodes[i], nodes[i + 1]);
        let fm = f(0.5 * (a + b))?;
        coarse += simpson(a, b, &cache[i], &fm, &cache[i + 1]);
    }
    let scale = coarse.amax().max(f64::MIN_POSITIVE);
    let tol_per_panel = rel_tol * scale / nodes.len() as f64;

    let mut total = Vector4::zeros();
    for i in 0..nodes.len() - 1 {
        total += adaptive(
            &f,
            nodes[i],
            nodes[i + 1],
            &cache[i],
            &cache[i + 1],
            tol_per_panel,
            48,
        )?;
    }

    // [0, omega_lo] sliver: the spectra are flat there for any model whose
    // slowest pole is well above omega_lo, but integrate it anyway.
    let f0 = f(1e-3 * omega_lo)?;
    let fl = &cache[0];
    let fm = f(0.5 * omega_lo)?;
    total += simpson(0.0, omega_lo, &f0, &fm, fl);

    // both signs of omega, spectral density normalization 1/2pi
    Ok(total * (2.0 / std::f64::consts::TAU))
}

fn simpson(
    a: f64,
    b: f64,
    fa: &Vector4<f64>,
    fm: &Vector4<f64>,
    fb: &Vector4<f64>,
) -> Vector4<f64> {
    (fa + fm * 4.0 + fb) * ((b - a) / 6.0)
}

fn adaptive(
    f: &impl Fn(f64) -> Result<Vector4<f64>>,
    a: f64,
    b: f64,
    fa: &Vector4<f64>,
    fb: &Vector4<f64>,
    tol: f64,
    depth: u32,
) -> Result<Vector4<f64>> {
    let m = 0.5 * (a + b);
    let fm = f(m)?;
    let whole = simpson(a, b, fa, &fm, fb);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm)?;
    let frm = f(rm)?;
    let left = simpson(a, m, fa, &flm, &fm);
    let right = simpson(m, b, &fm, &frm, fb);
    let err = (left + right - whole).amax();
    if err <= 15.0 * tol || depth == 0 {
        return Ok(left + right + (left + right - whole) / 15.0);
    }
    Ok(adaptive(f, a, m, fa, &fm, tol / 2.0, depth - 1)?
        + adaptive(f, m, b, &fm, fb, tol / 2.0, depth - 1)?)
}
