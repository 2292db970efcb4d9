//! Scalar travelling-wave backend: K u - c u + n(u) = 0 as a constrained
//! minimization sharing the solver, penalization, and spectral machinery of
//! the system backend through the [`EnergyModel`] trait.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functionals::{EnergyModel, Nonlinearity, ScalarFunctional};
use crate::longwave::{ConvergenceReport, ConvergenceRow, ScalingExponents};
use crate::minimizer::{minimize, MinimizationConfig, MinimizerResult};
use crate::spectral::{auto_sized_grid, WaveField};
use crate::symbols::Symbol;

/// A scalar problem: functional plus solver configuration.
pub struct ScalarProblem {
    pub functional: ScalarFunctional,
    pub config: MinimizationConfig,
}

impl ScalarProblem {
    pub fn new(functional: ScalarFunctional, config: MinimizationConfig) -> Result<ScalarProblem> {
        config.validate()?;
        Ok(ScalarProblem { functional, config })
    }
}

/// Minimize the scalar energy over the constraint sphere. The multiplier of
/// the stationarity relation is the wave speed: nu = c.
pub fn solve_scalar(problem: &ScalarProblem, initial: &WaveField) -> Result<MinimizerResult> {
    minimize(&problem.functional, &problem.config, initial)
}

/// Long-wave trend check for the scalar energy: measures
/// (E(S_lw u) + q m(0)) / q^(1 + (p-1) alpha) against the limit value along
/// a descending q list. The reference profile must stay inside the
/// regularity ball [`crate::longwave::DEFAULT_W_BALL`].
pub fn scalar_longwave_check(
    symbol: &Arc<Symbol>,
    nonlinearity: &Nonlinearity,
    exps: &ScalingExponents,
    profile: impl Fn(f64) -> f64,
    e_lw_limit: f64,
    q_list: &[f64],
) -> Result<ConvergenceReport> {
    if q_list.is_empty() {
        return Err(Error::Config("q list must not be empty".into()));
    }
    if q_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Config("q list must descend toward zero".into()));
    }
    crate::longwave::check_w_ball(&profile, exps, q_list[0], crate::longwave::DEFAULT_W_BALL)?;
    let p = nonlinearity
        .power()
        .ok_or_else(|| Error::Config("long-wave check needs a nonlinearity".into()))?;
    if (p - exps.p).abs() > 1e-12 {
        return Err(Error::Config(format!(
            "exponents were built for p = {}, nonlinearity has p = {p}",
            exps.p
        )));
    }
    let exponent = 1.0 + (p - 1.0) * exps.alpha;
    let m0 = symbol.m_at_zero();
    let mut rows = Vec::with_capacity(q_list.len());
    for &q in q_list {
        let amp = q.powf(exps.alpha);
        let squeeze = q.powf(exps.beta);
        let scaled = |x: f64| amp * profile(squeeze * x);
        let grid = auto_sized_grid(q, exps.beta, scaled)?;
        let u = WaveField::from_fn(&grid, scaled);
        let functional =
            ScalarFunctional::new(symbol.clone(), &grid, nonlinearity.clone(), None)?;
        let total = functional.energy(&u)?;
        let quadratic = -0.5 * functional.operator().quadratic_form(&u)?;
        let scale = q.powf(exponent);
        let ratio = (total + q * m0) / scale;
        rows.push(ConvergenceRow {
            q,
            grid_period: grid.period(),
            grid_size: grid.size(),
            ratio,
            defect: (ratio - e_lw_limit).abs(),
            quadratic_ratio: (quadratic + q * m0) / scale,
        });
    }
    let monotone_decreasing = rows.windows(2).all(|r| r[1].defect < r[0].defect);
    Ok(ConvergenceReport {
        exponent,
        limit: e_lw_limit,
        rows,
        monotone_decreasing,
    })
}
