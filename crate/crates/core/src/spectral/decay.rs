use serde::Serialize;

use super::field::WaveField;
use super::multiplier::MultiplierOperator;
use super::periodize::SUPPORT_FLOOR;
use crate::error::{Error, Result};
use crate::fit::loglog_fit;

/// Round-off floor for off-support values of Kf; below it no slope is fitted.
pub const DECAY_FLOOR: f64 = 1e-14;

/// Fitted off-support decay of |Kf(x)| against the distance to supp(f).
#[derive(Clone, Debug, Serialize)]
pub struct DecayFit {
    /// Polynomial order l the fit is tested against.
    pub order: u32,
    /// Log-log slope of |Kf| vs distance, when enough points sit above floor.
    pub slope: Option<f64>,
    /// Implied constant C_l in |Kf(x)| <= C_l ||f|| / dist^l.
    pub c_l: Option<f64>,
    /// All off-support probes were below the floor.
    pub below_floor: bool,
    pub pass: bool,
    /// (distance, |Kf|) probes used.
    pub points: Vec<(f64, f64)>,
}

/// Probe |Kf(x)| at distances d in [2, P/4] outside the numerical support of
/// f and fit the log-log slope. Passes when the slope is at most -l, or when
/// every probe sits below the round-off floor (faster-than-any-fit decay).
pub fn kernel_decay_report(
    op: &MultiplierOperator,
    f: &WaveField,
    l: u32,
) -> Result<DecayFit> {
    let grid = f.grid();
    let p = grid.period();
    if p / 4.0 <= 2.0 {
        return Err(Error::Config(format!(
            "period {p} too small for probes at distances in [2, P/4]"
        )));
    }

    // Numerical support: contiguous block around the peak above the floor.
    let samples = f.samples();
    let peak = samples
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    if samples[peak].abs() <= SUPPORT_FLOOR {
        return Err(Error::Config("field is identically below the support floor".into()));
    }
    let n = grid.size();
    let mut lo = peak;
    while lo > 0 && samples[lo - 1].abs() > SUPPORT_FLOOR {
        lo -= 1;
    }
    let mut hi = peak;
    while hi + 1 < n && samples[hi + 1].abs() > SUPPORT_FLOOR {
        hi += 1;
    }
    let left = grid.node(lo);
    let right = grid.node(hi);

    let kf = op.apply(f)?;
    let f_l2 = f.l2_norm_sq().sqrt();

    let d_max = p / 4.0;
    let n_probes = 16;
    let mut points = Vec::with_capacity(n_probes);
    for i in 0..n_probes {
        let d = 2.0 * (d_max / 2.0).powf(i as f64 / (n_probes - 1) as f64);
        let mut val = 0.0f64;
        if right + d < p / 2.0 {
            val = val.max(kf.eval(right + d).abs());
        }
        if left - d > -p / 2.0 {
            val = val.max(kf.eval(left - d).abs());
        }
        points.push((d, val));
    }

    let live: Vec<(f64, f64)> = points
        .iter()
        .cloned()
        .filter(|(_, v)| *v > DECAY_FLOOR)
        .collect();
    if live.len() < 3 {
        return Ok(DecayFit {
            order: l,
            slope: None,
            c_l: None,
            below_floor: true,
            pass: true,
            points,
        });
    }
    let (slope, intercept) = loglog_fit(&live);
    let c_l = intercept.exp() / f_l2.max(f64::MIN_POSITIVE);
    Ok(DecayFit {
        order: l,
        slope: Some(slope),
        c_l: Some(c_l),
        below_floor: false,
        pass: slope <= -(l as f64),
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::PeriodicGrid;
    use crate::symbols::Symbol;
    use std::sync::Arc;

    fn narrow_bump(grid: &PeriodicGrid) -> WaveField {
        WaveField::from_fn(grid, |x| (-(x / 0.5).powi(2)).exp())
    }

    #[test]
    fn bdw_kernel_decays_faster_than_cubic() {
        let grid = PeriodicGrid::new(64.0, 2048).unwrap();
        let op = MultiplierOperator::new(Arc::new(Symbol::builtin("bdw").unwrap()), &grid);
        let f = narrow_bump(&grid);
        let fit = kernel_decay_report(&op, &f, 3).unwrap();
        assert!(fit.pass, "fit: {fit:?}");
        if let Some(slope) = fit.slope {
            assert!(slope <= -3.0, "slope = {slope}");
        }
        // a fortiori at l = 1
        let fit1 = kernel_decay_report(&op, &f, 1).unwrap();
        assert!(fit1.pass);
    }

    #[test]
    fn constant_symbol_reports_below_floor() {
        let grid = PeriodicGrid::new(64.0, 1024).unwrap();
        let flat = Symbol::new("flat", |_| 1.0, -1.0, 1.0, 1, -1.0);
        let op = MultiplierOperator::new(Arc::new(flat), &grid);
        let f = narrow_bump(&grid);
        let fit = kernel_decay_report(&op, &f, 3).unwrap();
        assert!(fit.below_floor);
        assert!(fit.pass);
    }
}
