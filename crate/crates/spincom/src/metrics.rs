//! Direction-resolved sensing metrics: quantum nonreciprocity ratio,
//! sensitivity enhancement factor and the quantum advantage over the static
//! standard quantum limit.

use crate::spectra::SpectrumRecord;
use crate::{Error, Result};

/// Forward/backward spectrum records taken with identical parameters except
/// the sign of the Sagnac shift.
#[derive(Debug, Clone)]
pub struct DirectionalPair {
    pub forward: SpectrumRecord,
    pub backward: SpectrumRecord,
}

impl DirectionalPair {
    pub fn new(forward: SpectrumRecord, backward: SpectrumRecord) -> Result<Self> {
        if forward.omega != backward.omega {
            return Err(Error::Validation(
                "directional pair must share the Fourier frequency".to_string(),
            ));
        }
        if forward.phi_lo != backward.phi_lo {
            return Err(Error::Validation(
                "directional pair must share the homodyne angle".to_string(),
            ));
        }
        Ok(DirectionalPair { forward, backward })
    }
}

/// Quantum nonreciprocity ratio
/// `QNR = -log10( S_qz(forward) / S_qz(backward) )`; zero for a reciprocal
/// device, positive when the forward output is the more squeezed one.
pub fn qnr(pair: &DirectionalPair) -> Result<f64> {
    qnr_from_sqz(pair.forward.s_qz, pair.backward.s_qz)
}

/// QNR straight from the two squeezing spectra.
///
/// Evaluated as `log10(S_bwd) - log10(S_fwd)` so that swapping the
/// directions negates the result exactly.
pub fn qnr_from_sqz(s_forward: f64, s_backward: f64) -> Result<f64> {
    if s_forward <= 0.0 || s_backward <= 0.0 {
        return Err(Error::Validation(
            "squeezing spectra must be positive for a physical state".to_string(),
        ));
    }
    Ok(s_backward.log10() - s_forward.log10())
}

/// Sensitivity enhancement factor: ratio of the best (minimum over the scan)
/// force noise of the static device to that of the spinning one.
pub fn enhancement_factor(
    static_scan: &[SpectrumRecord],
    spinning_scan: &[SpectrumRecord],
) -> Result<f64> {
    let min_ff = |scan: &[SpectrumRecord], label: &str| -> Result<f64> {
        scan.iter()
            .map(|r| r.s_ff)
            .min_by(f64::total_cmp)
            .ok_or_else(|| Error::EmptyScan(label.to_string()))
    };
    Ok(min_ff(static_scan, "static scan")? / min_ff(spinning_scan, "spinning scan")?)
}

/// Quantum advantage in dB of a spinning record over the static SQL floor at
/// the same frequency: `10 log10 sqrt(S_FF_SQL / S_FF)`.
///
/// Thermal noise is subtracted from both sides (the default convention), so
/// the ratio reduces to the added-noise comparison `n_SQL / n_add`.
pub fn quantum_advantage(spinning: &SpectrumRecord, static_sql: f64) -> f64 {
    5.0 * (static_sql / spinning.n_add).log10()
}

/// Quantum advantage with the thermal contribution kept in both spectra.
pub fn quantum_advantage_with_thermal(
    spinning: &SpectrumRecord,
    static_sql: f64,
    nbar: f64,
) -> f64 {
    5.0 * ((nbar + static_sql) / (nbar + spinning.n_add)).log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Direction, SensorModel};
    use crate::profile::Profile;
    use crate::spectra::{evaluate_record, AnglePolicy};
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_2;

    fn record(nu: f64, direction: Direction) -> SpectrumRecord {
        let p = Profile::default();
        let drive = p.drive.with_direction(direction).with_rotation(nu);
        let sensor = SensorModel::new(p.params, drive).unwrap();
        evaluate_record(
            &sensor,
            2.0 * std::f64::consts::PI * 1.0e3,
            AnglePolicy::Fixed(FRAC_PI_2),
        )
        .unwrap()
    }

    #[test]
    fn reciprocal_device_has_zero_qnr() {
        let f = record(0.0, Direction::Forward);
        let b = record(0.0, Direction::Backward);
        let pair = DirectionalPair::new(f, b).unwrap();
        assert_eq!(qnr(&pair).unwrap(), 0.0);
    }

    #[test]
    fn qnr_is_antisymmetric_under_swap() {
        let f = record(3.0e3, Direction::Forward);
        let b = record(3.0e3, Direction::Backward);
        let fwd = qnr(&DirectionalPair::new(f.clone(), b.clone()).unwrap()).unwrap();
        let swapped = qnr(&DirectionalPair::new(b, f).unwrap()).unwrap();
        assert_eq!(fwd, -swapped);
        assert!(fwd != 0.0);
    }

    #[test]
    fn qnr_rejects_nonpositive_spectra() {
        assert!(qnr_from_sqz(0.0, 0.5).is_err());
        assert!(qnr_from_sqz(0.5, -1.0).is_err());
    }

    #[test]
    fn mismatched_pair_is_rejected() {
        let f = record(3.0e3, Direction::Forward);
        let mut b = record(3.0e3, Direction::Backward);
        b.omega *= 2.0;
        assert!(DirectionalPair::new(f, b).is_err());
    }

    #[test]
    fn enhancement_trivial_cases() {
        let scan = vec![record(0.0, Direction::Forward)];
        assert_relative_eq!(
            enhancement_factor(&scan, &scan).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        let mut scaled = scan.clone();
        scaled[0].s_ff /= 1000.0;
        assert_relative_eq!(
            enhancement_factor(&scan, &scaled).unwrap(),
            1000.0,
            max_relative = 1e-12
        );
        assert!(enhancement_factor(&[], &scan).is_err());
    }

    #[test]
    fn advantage_zero_at_the_sql_floor() {
        let mut r = record(5.69e3, Direction::Forward);
        let sql = r.n_sql;
        r.n_add = sql;
        assert_eq!(quantum_advantage(&r, sql), 0.0);
    }

    /// A static device measured through the standard procedure can never
    /// beat its own SQL.
    #[test]
    fn static_self_comparison_is_nonpositive() {
        let p = Profile::default();
        let sensor = SensorModel::new(p.params, p.drive.with_rotation(0.0)).unwrap();
        let grid = p.grids.omega_grid().unwrap();
        for &w in grid.points() {
            let r = evaluate_record(&sensor, w, AnglePolicy::Fixed(FRAC_PI_2)).unwrap();
            let adv = quantum_advantage(&r, r.n_sql);
            assert!(adv <= 1e-9, "advantage {adv} at omega {w}");
        }
    }

    /// Forward beats the static SQL at the sub-SQL working point; backward
    /// does not.
    #[test]
    fn advantage_is_one_way() {
        let f = record(3.0e3, Direction::Forward);
        let b = record(3.0e3, Direction::Backward);
        assert!(quantum_advantage(&f, f.n_sql) > 0.0);
        assert!(quantum_advantage(&b, b.n_sql) < 0.0);
    }
}
