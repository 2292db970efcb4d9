//! Variational objects: the system energy E = K + N with its square-root
//! nonlinearity, the scalar-equation energy, the constraint I, the H1-ball
//! penalization, and the analytic first variations of all of them.
//!
//! Nonlinear integrands are evaluated on a 2x oversampled grid and projected
//! back to the base band; the square-root nonlinearity cannot be de-aliased
//! exactly, and oversampling keeps the aliasing residue near round-off at
//! the amplitudes the guard admits.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::spectral::{MultiplierOperator, PeriodicGrid, WaveField};
use crate::symbols::Symbol;

/// Constraint functional I(w) = 1/2 integral of w^2 over the period.
pub fn constraint(w: &WaveField) -> f64 {
    0.5 * w.l2_norm_sq()
}

/// Psi(w) = sqrt(1 + w) - 1 - w/2; behaves like -w^2/8 near zero.
pub fn psi(w: f64) -> Result<f64> {
    if w <= -1.0 {
        return Err(Error::Domain { min_arg: 1.0 + w });
    }
    Ok((1.0 + w).sqrt() - 1.0 - 0.5 * w)
}

/// Common interface of the two energy backends, so the constrained solver
/// and all its diagnostics run on a single code path.
pub trait EnergyModel {
    fn grid(&self) -> &PeriodicGrid;
    fn operator(&self) -> &MultiplierOperator;
    fn energy(&self, w: &WaveField) -> Result<f64>;
    /// E(w) + m(0) I(w), evaluated without the bulk cancellation. On the
    /// constraint sphere this differs from `energy` by a constant, but stays
    /// at full relative accuracy when the energy is dominated by -q m(0),
    /// which is what line searches deep in the small-mass regime compare.
    fn energy_reduced(&self, w: &WaveField) -> Result<f64>;
    /// L2 gradient of the energy at w.
    fn gradient(&self, w: &WaveField) -> Result<WaveField>;
    fn backend_name(&self) -> &'static str;
}

/// Energy split reported by the system backend.
#[derive(Clone, Copy, Debug)]
pub struct EnergyParts {
    pub total: f64,
    pub quadratic: f64,
    pub nonlinear: f64,
}

/// The Whitham-Boussinesq energy in the w variable:
/// E(w) = -1/2 <w, Kw> - int N(w), N(w) = 2 Psi(w) Kw + 2 Psi(w) K(Psi(w)).
///
/// Evaluation is rejected unless min(w) stays above the amplitude guard and
/// |w|_inf stays within the smallness threshold, which keeps sqrt(1 + w)
/// well-conditioned.
pub struct WBFunctional {
    op: MultiplierOperator,
    op_fine: MultiplierOperator,
    fine: PeriodicGrid,
    w_min: f64,
    sup_limit: f64,
}

impl WBFunctional {
    pub fn new(symbol: Arc<Symbol>, grid: &PeriodicGrid) -> WBFunctional {
        let fine = grid.refined(2);
        WBFunctional {
            op: MultiplierOperator::new(symbol.clone(), grid),
            op_fine: MultiplierOperator::new(symbol, &fine),
            fine,
            w_min: -0.5,
            sup_limit: 0.5,
        }
    }

    pub fn with_guard(mut self, w_min: f64, sup_limit: f64) -> WBFunctional {
        assert!(w_min > -1.0 && w_min < 0.0, "guard must sit in (-1, 0)");
        self.w_min = w_min;
        self.sup_limit = sup_limit;
        self
    }

    pub fn amplitude_guard(&self) -> f64 {
        self.w_min
    }

    fn check_guard(&self, w: &WaveField) -> Result<()> {
        let linf = w.linf();
        if w.min_sample() <= self.w_min || linf > self.sup_limit {
            return Err(Error::Amplitude {
                max_abs: linf,
                limit: self.sup_limit,
            });
        }
        Ok(())
    }

    /// Oversampled ingredients shared by the energy and the gradient:
    /// (w, Kw, Psi(w), K Psi(w)) as samples on the refined grid.
    fn oversampled_parts(&self, w: &WaveField) -> Result<(WaveField, WaveField, WaveField, WaveField)> {
        let w_os = w.upsampled(2);
        let kw_os = self.op.apply(w)?.upsampled(2);
        let psi_samples: Result<Vec<f64>> = w_os.samples().iter().map(|&v| psi(v)).collect();
        let psi_os = WaveField::from_samples(&self.fine, psi_samples?).with_nyquist_zeroed();
        let kpsi_os = self.op_fine.apply(&psi_os)?;
        Ok((w_os, kw_os, psi_os, kpsi_os))
    }

    /// Total energy with its quadratic / nonlinear split.
    pub fn energy_parts(&self, w: &WaveField) -> Result<EnergyParts> {
        self.check_guard(w)?;
        let quadratic = -0.5 * self.op.quadratic_form(w)?;
        let (_, kw, psi_f, kpsi) = self.oversampled_parts(w)?;
        let dx = self.fine.dx();
        let mut nl = 0.0;
        for ((&p, &a), &b) in psi_f.samples().iter().zip(kw.samples()).zip(kpsi.samples()) {
            nl += 2.0 * p * a + 2.0 * p * b;
        }
        let nonlinear = -dx * nl;
        Ok(EnergyParts {
            total: quadratic + nonlinear,
            quadratic,
            nonlinear,
        })
    }

    /// dE(w) = -(1/sqrt(1+w)) Kw - (2/sqrt(1+w)) K(Psi(w)), evaluated on the
    /// refined grid and projected back to the base band. This is the exact
    /// adjoint of the discrete energy, so central differences of
    /// `energy_parts` reproduce it to round-off.
    pub fn gradient_field(&self, w: &WaveField) -> Result<WaveField> {
        self.check_guard(w)?;
        let (w_os, kw, _, kpsi) = self.oversampled_parts(w)?;
        let samples: Vec<f64> = w_os
            .samples()
            .iter()
            .zip(kw.samples())
            .zip(kpsi.samples())
            .map(|((&v, &a), &b)| -(a + 2.0 * b) / (1.0 + v).sqrt())
            .collect();
        let g_os = WaveField::from_samples(&self.fine, samples);
        Ok(g_os.projected_to(self.op.grid()))
    }

    /// Pointwise integrand split on the refined grid: N, its leading cubic
    /// part N_h = -(w^2/4) Kw, and N_l = N - N_h.
    pub fn nonlinearity_split(&self, w: &WaveField) -> Result<NonlinearitySplit> {
        self.check_guard(w)?;
        let (w_os, kw, psi_f, kpsi) = self.oversampled_parts(w)?;
        let mut n = Vec::with_capacity(self.fine.size());
        let mut n_h = Vec::with_capacity(self.fine.size());
        let mut n_l = Vec::with_capacity(self.fine.size());
        for ((&v, &a), (&p, &b)) in w_os
            .samples()
            .iter()
            .zip(kw.samples())
            .zip(psi_f.samples().iter().zip(kpsi.samples()))
        {
            let total = 2.0 * p * a + 2.0 * p * b;
            let high = -v * v / 4.0 * a;
            n.push(total);
            n_h.push(high);
            n_l.push(total - high);
        }
        Ok(NonlinearitySplit {
            grid: self.fine.clone(),
            n,
            n_h,
            n_l,
        })
    }
}

/// Sampled integrand split N = N_h + N_l on the oversampled grid.
pub struct NonlinearitySplit {
    pub grid: PeriodicGrid,
    pub n: Vec<f64>,
    pub n_h: Vec<f64>,
    pub n_l: Vec<f64>,
}

impl EnergyModel for WBFunctional {
    fn grid(&self) -> &PeriodicGrid {
        self.op.grid()
    }

    fn operator(&self) -> &MultiplierOperator {
        &self.op
    }

    fn energy(&self, w: &WaveField) -> Result<f64> {
        Ok(self.energy_parts(w)?.total)
    }

    fn energy_reduced(&self, w: &WaveField) -> Result<f64> {
        self.check_guard(w)?;
        let gap = -0.5 * self.op.gap_quadratic_form(w)?;
        let parts = self.energy_parts(w)?;
        Ok(gap + parts.nonlinear)
    }

    fn gradient(&self, w: &WaveField) -> Result<WaveField> {
        self.gradient_field(w)
    }

    fn backend_name(&self) -> &'static str {
        "wb"
    }
}

/// Leading-order nonlinearity of the scalar backend.
#[derive(Clone, Debug)]
pub enum Nonlinearity {
    /// c |x|^p with c != 0, any real p in [2, 4 j* + 1).
    AbsPower { p: f64, c: f64 },
    /// c x^p with integer p in the admissible range; odd p requires c > 0.
    SignedPower { p: u32, c: f64 },
    /// Identically zero; only for linear eigenproblem cross-checks.
    Zero,
}

impl Nonlinearity {
    pub fn validate(&self, j_star: u32) -> Result<()> {
        let hi = (4 * j_star + 1) as f64;
        match *self {
            Nonlinearity::AbsPower { p, c } => {
                if c == 0.0 {
                    return Err(Error::Config("nonlinearity coefficient must be nonzero".into()));
                }
                if !(2.0..hi).contains(&p) {
                    return Err(Error::Config(format!(
                        "power p = {p} outside the admissible range [2, {hi})"
                    )));
                }
                Ok(())
            }
            Nonlinearity::SignedPower { p, c } => {
                let pf = p as f64;
                if !(2.0..hi).contains(&pf) {
                    return Err(Error::Config(format!(
                        "power p = {p} outside the admissible range [2, {hi})"
                    )));
                }
                if p % 2 == 1 && c <= 0.0 {
                    return Err(Error::Config(
                        "odd signed powers require a positive coefficient".into(),
                    ));
                }
                if c == 0.0 {
                    return Err(Error::Config("nonlinearity coefficient must be nonzero".into()));
                }
                Ok(())
            }
            Nonlinearity::Zero => Err(Error::Config(
                "the zero nonlinearity is only valid for linear checks".into(),
            )),
        }
    }

    /// Pointwise value of n(x).
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Nonlinearity::AbsPower { p, c } => c * x.abs().powf(p),
            Nonlinearity::SignedPower { p, c } => c * x.powi(p as i32),
            Nonlinearity::Zero => 0.0,
        }
    }

    /// Closed-form antiderivative N(x) with N(0) = 0.
    pub fn antiderivative(&self, x: f64) -> f64 {
        match *self {
            Nonlinearity::AbsPower { p, c } => c * x * x.abs().powf(p) / (p + 1.0),
            Nonlinearity::SignedPower { p, c } => {
                c * x.powi(p as i32 + 1) / (p as f64 + 1.0)
            }
            Nonlinearity::Zero => 0.0,
        }
    }

    pub fn power(&self) -> Option<f64> {
        match *self {
            Nonlinearity::AbsPower { p, .. } => Some(p),
            Nonlinearity::SignedPower { p, .. } => Some(p as f64),
            Nonlinearity::Zero => None,
        }
    }
}

/// Optional higher-order remainder of the scalar nonlinearity, O(|x|^(p+delta)).
#[derive(Clone)]
pub struct ScalarRemainder {
    pub delta: f64,
    pub n_r: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub antiderivative: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

/// Scalar travelling-wave energy, E(u) = -1/2 <u, Ku> - int N(u).
pub struct ScalarFunctional {
    op: MultiplierOperator,
    fine: PeriodicGrid,
    nonlinearity: Nonlinearity,
    remainder: Option<ScalarRemainder>,
}

impl ScalarFunctional {
    pub fn new(
        symbol: Arc<Symbol>,
        grid: &PeriodicGrid,
        nonlinearity: Nonlinearity,
        remainder: Option<ScalarRemainder>,
    ) -> Result<ScalarFunctional> {
        nonlinearity.validate(symbol.j_star())?;
        if let Some(r) = &remainder {
            if r.delta <= 0.0 {
                return Err(Error::Config("remainder exponent delta must be positive".into()));
            }
        }
        Ok(Self::build(symbol, grid, nonlinearity, remainder))
    }

    /// Linear backend (n = 0), used by eigenmode cross-checks.
    pub fn linear(symbol: Arc<Symbol>, grid: &PeriodicGrid) -> ScalarFunctional {
        Self::build(symbol, grid, Nonlinearity::Zero, None)
    }

    fn build(
        symbol: Arc<Symbol>,
        grid: &PeriodicGrid,
        nonlinearity: Nonlinearity,
        remainder: Option<ScalarRemainder>,
    ) -> ScalarFunctional {
        ScalarFunctional {
            op: MultiplierOperator::new(symbol, grid),
            fine: grid.refined(2),
            nonlinearity,
            remainder,
        }
    }

    pub fn nonlinearity(&self) -> &Nonlinearity {
        &self.nonlinearity
    }

    fn big_n(&self, x: f64) -> f64 {
        let mut v = self.nonlinearity.antiderivative(x);
        if let Some(r) = &self.remainder {
            v += (r.antiderivative)(x);
        }
        v
    }

    fn small_n(&self, x: f64) -> f64 {
        let mut v = self.nonlinearity.eval(x);
        if let Some(r) = &self.remainder {
            v += (r.n_r)(x);
        }
        v
    }

    fn nonlinear_integral(&self, u: &WaveField) -> f64 {
        let u_os = u.upsampled(2);
        let nl: f64 = u_os.samples().iter().map(|&v| self.big_n(v)).sum();
        -self.fine.dx() * nl
    }
}

impl EnergyModel for ScalarFunctional {
    fn grid(&self) -> &PeriodicGrid {
        self.op.grid()
    }

    fn operator(&self) -> &MultiplierOperator {
        &self.op
    }

    fn energy(&self, u: &WaveField) -> Result<f64> {
        Ok(-0.5 * self.op.quadratic_form(u)? + self.nonlinear_integral(u))
    }

    fn energy_reduced(&self, u: &WaveField) -> Result<f64> {
        Ok(-0.5 * self.op.gap_quadratic_form(u)? + self.nonlinear_integral(u))
    }

    fn gradient(&self, u: &WaveField) -> Result<WaveField> {
        let ku_os = self.op.apply(u)?.upsampled(2);
        let u_os = u.upsampled(2);
        let samples: Vec<f64> = u_os
            .samples()
            .iter()
            .zip(ku_os.samples())
            .map(|(&v, &a)| -a - self.small_n(v))
            .collect();
        Ok(WaveField::from_samples(&self.fine, samples).projected_to(self.op.grid()))
    }

    fn backend_name(&self) -> &'static str {
        "scalar"
    }
}

/// Barrier vanishing on [0, R^2] and blowing up at (2R)^2:
/// rho(t) = strength (t - R^2)_+^2 / ((2R)^2 - t). C1 at t = R^2.
#[derive(Clone, Copy, Debug)]
pub struct Penalization {
    r: f64,
    strength: f64,
}

impl Penalization {
    pub fn new(r: f64, strength: f64) -> Result<Penalization> {
        if r <= 0.0 || strength <= 0.0 {
            return Err(Error::Config(
                "penalization radius and strength must be positive".into(),
            ));
        }
        Ok(Penalization { r, strength })
    }

    pub fn radius(&self) -> f64 {
        self.r
    }

    pub fn r_sq(&self) -> f64 {
        self.r * self.r
    }

    /// Barrier location (2R)^2.
    pub fn barrier(&self) -> f64 {
        4.0 * self.r * self.r
    }

    pub fn value(&self, t: f64) -> Result<f64> {
        let r2 = self.r_sq();
        let b = self.barrier();
        if t >= b {
            return Err(Error::OutsideAdmissible { h1_sq: t, bound: b });
        }
        if t <= r2 {
            Ok(0.0)
        } else {
            let e = t - r2;
            Ok(self.strength * e * e / (b - t))
        }
    }

    pub fn derivative(&self, t: f64) -> Result<f64> {
        let r2 = self.r_sq();
        let b = self.barrier();
        if t >= b {
            return Err(Error::OutsideAdmissible { h1_sq: t, bound: b });
        }
        if t <= r2 {
            Ok(0.0)
        } else {
            let e = t - r2;
            let d = b - t;
            Ok(self.strength * (2.0 * e * d + e * e) / (d * d))
        }
    }
}

/// Penalized energy E(w) + rho(|w|_H1^2); equals the plain energy whenever
/// the H1 mass stays within R^2, and is undefined past the (2R)^2 barrier.
pub fn penalized_energy<M: EnergyModel + ?Sized>(
    model: &M,
    pen: &Penalization,
    w: &WaveField,
) -> Result<f64> {
    Ok(model.energy(w)? + pen.value(w.h1_norm_sq())?)
}
