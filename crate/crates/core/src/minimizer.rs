//! Constrained minimization of the (penalized) energy over the sphere
//! {I(w) = q} by projected gradient descent, continuation in q, and an
//! independent Petviashvili fixed-point oracle for cross-validation.
//!
//! The descent direction is the H1-preconditioned tangent gradient
//! (mode-wise division by 1 + kappa^2), which keeps the step size O(1)
//! at any resolution. The line search is backtracking Armijo.

use rustfft::num_complex::Complex64;

use crate::error::{Error, Result};
use crate::functionals::{
    constraint, EnergyModel, Nonlinearity, Penalization, ScalarFunctional, WBFunctional,
};
use crate::spectral::{PeriodicGrid, WaveField};

#[derive(Clone, Copy, Debug)]
pub struct StepPolicy {
    pub initial: f64,
    pub shrink: f64,
    pub max_backtracks: u32,
    pub armijo: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            initial: 1.0,
            shrink: 0.5,
            max_backtracks: 60,
            armijo: 1e-4,
        }
    }
}

#[derive(Clone, Debug)]
pub struct MinimizationConfig {
    /// Constraint level I(w) = q.
    pub q: f64,
    /// H1-ball radius R; the penalty vanishes inside R^2 and bars (2R)^2.
    pub r: f64,
    pub penalty_strength: f64,
    pub step: StepPolicy,
    /// Convergence threshold on the H1 norm of the projected gradient.
    pub tol_residual: f64,
    pub max_iters: u64,
    /// Largest q the small-mass regime is trusted for.
    pub q_ceiling: f64,
    /// Optional continuation ladder (ascending q values).
    pub ladder: Option<Vec<f64>>,
}

impl MinimizationConfig {
    /// Defaults for constraint level q: R^2 = 50 q leaves the expected
    /// |w|_H1^2 = O(q) minimizer well inside the unpenalized ball.
    pub fn for_q(q: f64) -> MinimizationConfig {
        MinimizationConfig {
            q,
            r: (50.0 * q).sqrt(),
            penalty_strength: 1.0,
            step: StepPolicy::default(),
            tol_residual: 1e-9,
            max_iters: 200_000,
            q_ceiling: 0.05,
            ladder: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q <= 0.0 {
            return Err(Error::Config(format!("q must be positive, got {}", self.q)));
        }
        if self.q >= self.q_ceiling {
            return Err(Error::Config(format!(
                "q = {} reaches the configured ceiling {}",
                self.q, self.q_ceiling
            )));
        }
        if self.r <= 0.0 || self.penalty_strength <= 0.0 {
            return Err(Error::Config(
                "R and the penalty strength must be positive".into(),
            ));
        }
        if self.tol_residual <= 0.0 {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        if let Some(ladder) = &self.ladder {
            if ladder.windows(2).any(|w| w[1] <= w[0]) {
                return Err(Error::Config(
                    "continuation ladder must be strictly increasing".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn penalization(&self) -> Result<Penalization> {
        Penalization::new(self.r, self.penalty_strength)
    }
}

#[derive(Clone, Debug)]
pub struct MinimizerResult {
    pub w: WaveField,
    /// Lagrange multiplier lambda = c^2 of dE(w) + lambda w = 0.
    pub lambda: f64,
    pub energy: f64,
    pub iterations: u64,
    /// H1 norm of dE(w) + lambda w at the solution.
    pub residual: f64,
    pub penalty_active: bool,
    /// |w|_H1^2 within 1% of R^2: converged, but crowding the ball.
    pub boundary_flag: bool,
}

/// Rescale w onto the sphere I = q.
pub fn project_to_sphere(w: &WaveField, q: f64) -> Result<WaveField> {
    let i = constraint(w);
    if i <= 0.0 {
        return Err(Error::CannotProject);
    }
    Ok(w * (q / i).sqrt())
}

fn h1_multiplier(w: &WaveField, forward: bool) -> WaveField {
    let grid = w.grid().clone();
    let coeffs: Vec<Complex64> = w
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let kappa = grid.wavenumber(i);
            let factor = 1.0 + kappa * kappa;
            if forward {
                c * factor
            } else {
                c / factor
            }
        })
        .collect();
    WaveField::from_coeffs(&grid, coeffs)
}

fn tangent_part(g: &WaveField, w: &WaveField) -> WaveField {
    let radial = g.l2_inner(w) / w.l2_norm_sq();
    g - &(w * radial)
}

/// Gradient of the penalized energy projected onto the tangent space of the
/// constraint sphere at w; orthogonal to w in L2.
pub fn projected_gradient<M: EnergyModel + ?Sized>(
    model: &M,
    pen: &Penalization,
    w: &WaveField,
    q: f64,
) -> Result<WaveField> {
    let i = constraint(w);
    if (i - q).abs() > 1e-8 * q.max(1e-300) {
        return Err(Error::Config(format!(
            "field is off the constraint sphere: I = {i:.6e}, q = {q:.6e}"
        )));
    }
    let g = penalized_gradient(model, pen, w)?;
    Ok(tangent_part(&g, w))
}

fn penalized_gradient<M: EnergyModel + ?Sized>(
    model: &M,
    pen: &Penalization,
    w: &WaveField,
) -> Result<WaveField> {
    let mut g = model.gradient(w)?;
    let dpen = pen.derivative(w.h1_norm_sq())?;
    if dpen != 0.0 {
        g = &g + &(&h1_multiplier(w, true) * (2.0 * dpen));
    }
    Ok(g)
}

/// Minimize the penalized energy over {I(w) = q, |w|_H1 < 2R} from the given
/// initial field. On success the minimizer is interior (penalty inactive),
/// satisfies dE(w) + lambda w = 0 to the configured tolerance with
/// lambda = -<dE(w), w> / (2q) > 0, and is circularly shifted so its minimum
/// sits at x = 0 (no shift when the minimum is not unique).
pub fn minimize<M: EnergyModel + ?Sized>(
    model: &M,
    config: &MinimizationConfig,
    initial: &WaveField,
) -> Result<MinimizerResult> {
    config.validate()?;
    let pen = config.penalization()?;
    let q = config.q;

    let mut w = project_to_sphere(initial, q)?;
    let t0 = w.h1_norm_sq();
    if t0 >= pen.barrier() {
        return Err(Error::OutsideAdmissible {
            h1_sq: t0,
            bound: pen.barrier(),
        });
    }
    // Line searches compare the reduced energy E + m(0) I, which differs from
    // E by a constant on the sphere but keeps full relative accuracy once the
    // bulk -q m(0) dominates.
    let reduced = |field: &WaveField| -> Result<f64> {
        Ok(model.energy_reduced(field)? + pen.value(field.h1_norm_sq())?)
    };
    let mut energy = reduced(&w)?;

    let mut history: Vec<f64> = Vec::new();
    let mut iterations = 0u64;
    let mut converged = false;

    for it in 0..=config.max_iters {
        iterations = it;
        let g = penalized_gradient(model, &pen, &w)?;
        let g_tan = tangent_part(&g, &w);
        let residual = g_tan.sobolev_norm(1.0)?;
        if history.len() < 4096 {
            history.push(residual);
        }
        if residual <= config.tol_residual {
            converged = true;
            break;
        }
        if it == config.max_iters {
            break;
        }

        let d = &tangent_part(&h1_multiplier(&g_tan, false), &w) * -1.0;
        let slope = g_tan.l2_inner(&d);
        if !slope.is_finite() || slope >= 0.0 {
            break; // descent direction lost to round-off
        }

        // When the predicted first-order decrease sinks below the round-off
        // of the energy evaluation, Armijo comparisons turn into noise;
        // accept on strict residual decrease instead.
        let noise = 128.0 * f64::EPSILON * energy.abs();
        let residual_mode = config.step.armijo * (-slope) < noise;

        let mut step = config.step.initial;
        let mut accepted = false;
        for _ in 0..=config.step.max_backtracks {
            let trial = match project_to_sphere(&(&w + &(&d * step)), q) {
                Ok(t) => t,
                Err(_) => {
                    step *= config.step.shrink;
                    continue;
                }
            };
            let verdict = if residual_mode {
                match penalized_gradient(model, &pen, &trial) {
                    Ok(gt) => {
                        let res_trial = tangent_part(&gt, &trial).sobolev_norm(1.0)?;
                        if res_trial < residual {
                            Some(energy)
                        } else {
                            None
                        }
                    }
                    Err(Error::OutsideAdmissible { .. }) | Err(Error::Amplitude { .. }) => None,
                    Err(e) => return Err(e),
                }
            } else {
                match reduced(&trial) {
                    Ok(e_trial) => {
                        let bound = energy
                            + config.step.armijo * step * slope
                            + 4.0 * f64::EPSILON * energy.abs();
                        (e_trial <= bound).then_some(e_trial)
                    }
                    // trial left the admissible set or the guard: shrink, retry
                    Err(Error::OutsideAdmissible { .. }) | Err(Error::Amplitude { .. }) => None,
                    Err(e) => return Err(e),
                }
            };
            if let Some(e_new) = verdict {
                w = trial;
                energy = e_new;
                accepted = true;
                break;
            }
            step *= config.step.shrink;
        }
        if !accepted {
            break; // line search stalled; settled by the residual check below
        }
    }

    let g_unpen = model.gradient(&w)?;
    let lambda = -g_unpen.l2_inner(&w) / (2.0 * q);
    let el_residual = (&g_unpen + &(&w * lambda)).sobolev_norm(1.0)?;
    if !converged && el_residual > config.tol_residual {
        return Err(Error::NoConvergence {
            iterations,
            residual: el_residual,
            history: thin_history(&history),
        });
    }

    let t = w.h1_norm_sq();
    let penalty_active = t > pen.r_sq();
    if penalty_active {
        return Err(Error::BoundaryMinimizer {
            h1_sq: t,
            r_sq: pen.r_sq(),
        });
    }
    if lambda <= 0.0 {
        return Err(Error::NonWaveMultiplier { lambda });
    }

    // Translation normalization: minimum to x = 0 when it is unique.
    let spread = w.max_sample() - w.min_sample();
    if spread > 1e-12 * w.linf().max(1e-300) {
        let n = w.grid().size();
        let argmin = w
            .samples()
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .map(|(j, _)| j)
            .unwrap();
        w = w.rotated(argmin as isize - n as isize / 2);
    }

    Ok(MinimizerResult {
        lambda,
        energy: model.energy(&w)?,
        iterations,
        residual: el_residual,
        penalty_active,
        boundary_flag: t > 0.99 * pen.r_sq(),
        w,
    })
}

fn thin_history(history: &[f64]) -> Vec<f64> {
    let stride = (history.len() / 32).max(1);
    history.iter().step_by(stride).cloned().collect()
}

/// Outcome of a continuation sweep; `results` is truncated at the first
/// failing rung, with the failure preserved alongside.
pub struct ContinuationOutcome {
    pub qs: Vec<f64>,
    pub results: Vec<MinimizerResult>,
    pub failure: Option<(usize, Error)>,
}

/// Warm-started minimization along an ascending ladder of q values. Each
/// result seeds the next after the long-wave rescaling with exponents
/// (alpha, beta): amplitudes scale by (q'/q)^alpha, the period by
/// (q'/q)^(-beta).
pub fn continuation_run<M: EnergyModel>(
    ladder: &[f64],
    seed: &WaveField,
    alpha: f64,
    beta: f64,
    mut problem: impl FnMut(f64) -> Result<(M, MinimizationConfig)>,
) -> Result<ContinuationOutcome> {
    if ladder.is_empty() {
        return Err(Error::Config("continuation ladder is empty".into()));
    }
    if ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(
            "continuation ladder must be strictly increasing".into(),
        ));
    }
    let mut outcome = ContinuationOutcome {
        qs: Vec::new(),
        results: Vec::new(),
        failure: None,
    };
    let mut carry: Option<(f64, WaveField)> = None;
    for (i, &q) in ladder.iter().enumerate() {
        let step = (|| -> Result<MinimizerResult> {
            let (model, config) = problem(q)?;
            let seed_q = match &carry {
                None => {
                    if seed.grid() == model.grid() {
                        seed.clone()
                    } else {
                        seed.resample_to(model.grid())
                    }
                }
                Some((q_prev, w_prev)) => {
                    rescaled_between(w_prev, *q_prev, q, alpha, beta, model.grid())?
                }
            };
            minimize(&model, &config, &seed_q)
        })();
        match step {
            Ok(res) => {
                carry = Some((q, res.w.clone()));
                outcome.qs.push(q);
                outcome.results.push(res);
            }
            Err(e) => {
                outcome.failure = Some((i, e));
                break;
            }
        }
    }
    Ok(outcome)
}

/// Long-wave rescaling of a field between constraint levels; resamples onto
/// the target grid when the rescaled period does not match it exactly.
pub fn rescaled_between(
    w: &WaveField,
    q_from: f64,
    q_to: f64,
    alpha: f64,
    beta: f64,
    target: &PeriodicGrid,
) -> Result<WaveField> {
    let ratio = q_to / q_from;
    let inter = PeriodicGrid::new(w.grid().period() * ratio.powf(-beta), w.grid().size())?;
    let samples: Vec<f64> = w.samples().iter().map(|&s| s * ratio.powf(alpha)).collect();
    let scaled = WaveField::from_samples(&inter, samples);
    if inter == *target {
        Ok(scaled)
    } else {
        Ok(scaled.resample_to(target))
    }
}

/// Result of a Petviashvili fixed-point run.
#[derive(Clone, Debug)]
pub struct PetviashviliResult {
    pub w: WaveField,
    /// L2 residual of the fixed-point equation at the last iterate.
    pub residual: f64,
    pub iterations: u64,
    /// Final stabilizing factor; 1 at a fixed point.
    pub stabilizer: f64,
}

/// Petviashvili iteration for the system's travelling-wave equation at fixed
/// lambda > m(0), in the variable f = sqrt(1+w) - 1:
///
///   (lambda - K) f = -(lambda/2) (3 f^2 + f^3),
///
/// iterated as f <- M^2 (lambda - K)^(-1) rhs(f) with the quadratic-degree
/// stabilizer M = <(lambda - K) f, f> / <rhs(f), f>. A fixed-point oracle,
/// fully independent of the descent solver.
pub fn petviashvili_wb(
    functional: &WBFunctional,
    lambda: f64,
    seed_w: &WaveField,
    tol: f64,
    max_iters: u64,
) -> Result<PetviashviliResult> {
    let op = functional.operator();
    let grid = op.grid().clone();
    let min_arg = 1.0 + seed_w.min_sample();
    if min_arg <= 0.0 {
        return Err(Error::Domain { min_arg });
    }
    let mut f = seed_w.map(|v| (1.0 + v).sqrt() - 1.0);

    let rhs = |f: &WaveField| -> WaveField {
        let f_os = f.upsampled(2);
        let samples: Vec<f64> = f_os
            .samples()
            .iter()
            .map(|&v| -(lambda / 2.0) * (3.0 * v * v + v * v * v))
            .collect();
        WaveField::from_samples(f_os.grid(), samples).projected_to(&grid)
    };

    let mut iterations = 0;
    let mut stabilizer = f64::NAN;
    for it in 0..max_iters {
        iterations = it + 1;
        let r = rhs(&f);
        let num = lambda * f.l2_norm_sq() - op.quadratic_form(&f)?;
        let den = r.l2_inner(&f);
        if den == 0.0 {
            return Err(Error::CannotProject);
        }
        let m = num / den;
        if m <= 0.0 {
            return Err(Error::Config(format!(
                "stabilizing factor turned nonpositive ({m:.3e}); wrong branch"
            )));
        }
        stabilizer = m;
        let f_next = &op.shifted_inverse(lambda, &r)? * (m * m);
        let step = (&f_next - &f).sobolev_norm(1.0)?;
        let scale = f.sobolev_norm(1.0)?.max(1e-300);
        f = f_next;
        if step <= tol * scale && (m - 1.0).abs() <= tol.sqrt() {
            break;
        }
    }

    let r = rhs(&f);
    let lhs = &(&f * lambda) - &op.apply(&f)?;
    let residual = (&lhs - &r).sobolev_norm(0.0)?;

    // back to w = f^2 + 2f, de-aliased
    let f_os = f.upsampled(2);
    let w_samples: Vec<f64> = f_os.samples().iter().map(|&v| v * v + 2.0 * v).collect();
    let w = WaveField::from_samples(f_os.grid(), w_samples).projected_to(&grid);
    Ok(PetviashviliResult {
        w,
        residual,
        iterations,
        stabilizer,
    })
}

/// Petviashvili iteration for the scalar equation at fixed nu > m(0):
/// (nu - K) u = n(u), stabilized with exponent gamma = p / (p - 1).
pub fn petviashvili_scalar(
    functional: &ScalarFunctional,
    nu: f64,
    seed: &WaveField,
    tol: f64,
    max_iters: u64,
) -> Result<PetviashviliResult> {
    let op = functional.operator();
    let grid = op.grid().clone();
    let p = match functional.nonlinearity() {
        Nonlinearity::Zero => {
            return Err(Error::Config("Petviashvili needs a nonlinearity".into()))
        }
        nl => nl.power().unwrap(),
    };
    let gamma = p / (p - 1.0);

    let rhs = |u: &WaveField| -> WaveField {
        let u_os = u.upsampled(2);
        let samples: Vec<f64> = u_os
            .samples()
            .iter()
            .map(|&v| functional.nonlinearity().eval(v))
            .collect();
        WaveField::from_samples(u_os.grid(), samples).projected_to(&grid)
    };

    let mut u = seed.clone();
    let mut iterations = 0;
    let mut stabilizer = f64::NAN;
    for it in 0..max_iters {
        iterations = it + 1;
        let r = rhs(&u);
        let num = nu * u.l2_norm_sq() - op.quadratic_form(&u)?;
        let den = r.l2_inner(&u);
        if den == 0.0 {
            return Err(Error::CannotProject);
        }
        let m = num / den;
        if m <= 0.0 {
            return Err(Error::Config(format!(
                "stabilizing factor turned nonpositive ({m:.3e}); wrong branch"
            )));
        }
        stabilizer = m;
        let u_next = &op.shifted_inverse(nu, &r)? * m.powf(gamma);
        let step = (&u_next - &u).sobolev_norm(1.0)?;
        let scale = u.sobolev_norm(1.0)?.max(1e-300);
        u = u_next;
        if step <= tol * scale && (m - 1.0).abs() <= tol.sqrt() {
            break;
        }
    }

    let r = rhs(&u);
    let lhs = &(&u * nu) - &op.apply(&u)?;
    let residual = (&lhs - &r).sobolev_norm(0.0)?;
    Ok(PetviashviliResult {
        w: u,
        residual,
        iterations,
        stabilizer,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::Symbol;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn grid_2pi(n: usize) -> PeriodicGrid {
        PeriodicGrid::new(2.0 * PI, n).unwrap()
    }

    #[test]
    fn sphere_projection_examples() {
        let g = grid_2pi(64);
        let cosx = WaveField::from_fn(&g, |x| x.cos());
        // already on the sphere at q = pi/2
        let p = project_to_sphere(&cosx, PI / 2.0).unwrap();
        for (a, b) in p.samples().iter().zip(cosx.samples()) {
            assert!((a - b).abs() < 1e-14);
        }
        // 2 cos(x) rescales to cos(x)
        let double = WaveField::from_fn(&g, |x| 2.0 * x.cos());
        let p = project_to_sphere(&double, PI / 2.0).unwrap();
        for (a, b) in p.samples().iter().zip(cosx.samples()) {
            assert!((a - b).abs() < 1e-14);
        }
        assert!((constraint(&p) - PI / 2.0).abs() < 1e-14);
        // constants land on the constant with I = q
        let c = WaveField::constant(&g, 0.3);
        let q = 0.01;
        let p = project_to_sphere(&c, q).unwrap();
        let expect = (2.0 * q / (2.0 * PI)).sqrt();
        for &s in p.samples() {
            assert!((s - expect).abs() < 1e-15);
        }
        assert!(matches!(
            project_to_sphere(&WaveField::zeros(&g), 1.0),
            Err(Error::CannotProject)
        ));
    }

    #[test]
    fn projected_gradient_vanishes_on_the_constant_branch() {
        let g = grid_2pi(64);
        let f = WBFunctional::new(Arc::new(Symbol::builtin("bdw").unwrap()), &g);
        let q = 0.0441 * PI; // the w = 0.21 constant
        let w = WaveField::constant(&g, 0.21);
        let pen = Penalization::new((50.0 * q).sqrt(), 1.0).unwrap();
        let pg = projected_gradient(&f, &pen, &w, q).unwrap();
        assert!(pg.linf() < 1e-14, "projected gradient {}", pg.linf());
    }

    #[test]
    fn projected_gradient_annihilates_radial_directions() {
        // for a single Fourier mode the gradient of the linear scalar energy
        // is parallel to the field, so the tangent part is zero
        let g = grid_2pi(64);
        let f = ScalarFunctional::linear(Arc::new(Symbol::builtin("whitham").unwrap()), &g);
        let u = WaveField::from_fn(&g, |x| x.cos());
        let q = constraint(&u);
        let pen = Penalization::new((50.0 * q).sqrt(), 1.0).unwrap();
        let pg = projected_gradient(&f, &pen, &u, q).unwrap();
        assert!(pg.linf() < 1e-13, "projected gradient {}", pg.linf());
    }

    #[test]
    fn minimize_accepts_constant_critical_point_immediately() {
        let g = grid_2pi(64);
        let f = WBFunctional::new(Arc::new(Symbol::builtin("bdw").unwrap()), &g);
        let w0 = 0.21f64;
        let q = 0.5 * w0 * w0 * 2.0 * PI;
        // this q exceeds the small-mass ceiling; widen it for the oracle run
        let mut config = MinimizationConfig::for_q(q);
        config.q_ceiling = 1.0;
        let res = minimize(&f, &config, &WaveField::constant(&g, 1.0)).unwrap();
        assert_eq!(res.iterations, 0, "constant branch is stationary at once");
        let expect_lambda = 2.0 * ((1.0 + w0).sqrt() - 1.0) / (w0 * (1.0 + w0).sqrt());
        assert!(
            (res.lambda - expect_lambda).abs() < 1e-12,
            "lambda {} vs {}",
            res.lambda,
            expect_lambda
        );
        assert!((expect_lambda - 200.0 / 231.0).abs() < 1e-15);
        assert!(!res.penalty_active);
    }

    #[test]
    fn minimize_rejects_initials_outside_the_admissible_ball() {
        let g = grid_2pi(64);
        let f = WBFunctional::new(Arc::new(Symbol::builtin("bdw").unwrap()), &g);
        let q = 1e-3;
        let mut config = MinimizationConfig::for_q(q);
        // shrink the ball until even |w|_L2^2 = 2q breaches (2R)^2
        config.r = (q / 100.0).sqrt();
        let seed = WaveField::from_fn(&g, |x| x.cos());
        assert!(matches!(
            minimize(&f, &config, &seed),
            Err(Error::OutsideAdmissible { .. })
        ));
    }

    #[test]
    fn linear_scalar_solver_recovers_the_seeded_eigenmode() {
        let g = PeriodicGrid::new(40.0, 128).unwrap();
        let f = ScalarFunctional::linear(Arc::new(Symbol::builtin("whitham").unwrap()), &g);
        let seed = WaveField::from_fn(&g, |x| (2.0 * PI * x / 40.0).cos());
        let config = MinimizationConfig::for_q(1e-3);
        let res = minimize(&f, &config, &seed).unwrap();
        let kappa1 = 2.0 * PI / 40.0;
        let expect = f.operator().symbol().eval(kappa1);
        assert!(
            (res.lambda - expect).abs() < 1e-10,
            "nu = {} vs m(kappa_1) = {expect}",
            res.lambda
        );
        assert_eq!(res.iterations, 0);
    }

    #[test]
    fn continuation_rejects_descending_ladders() {
        let g = grid_2pi(64);
        let seed = WaveField::from_fn(&g, |x| x.cos());
        let out = continuation_run(
            &[1e-3, 1e-4],
            &seed,
            2.0 / 3.0,
            1.0 / 3.0,
            |q| -> Result<(ScalarFunctional, MinimizationConfig)> {
                Ok((
                    ScalarFunctional::linear(
                        Arc::new(Symbol::builtin("whitham").unwrap()),
                        &grid_2pi(64),
                    ),
                    MinimizationConfig::for_q(q),
                ))
            },
        );
        assert!(matches!(out, Err(Error::Config(_))));
    }

    #[test]
    fn petviashvili_reproduces_the_exact_kdv_model_soliton() {
        // On the kdv_model symbol the scalar equation is the exact KdV
        // balance over the soliton's spectral band, so the travelling wave is
        // A sech^2(B x) with A = 2 B^2 and nu = 1 + 4 B^2 / 3.
        let q = 1e-3f64;
        let b = (3.0 * q / 8.0).cbrt();
        let a = 2.0 * b * b;
        let nu = 1.0 + 4.0 * b * b / 3.0;
        let grid = PeriodicGrid::new(400.0, 256).unwrap();
        let f = ScalarFunctional::new(
            Arc::new(Symbol::builtin("kdv_model").unwrap()),
            &grid,
            Nonlinearity::AbsPower { p: 2.0, c: 1.0 },
            None,
        )
        .unwrap();
        let exact = WaveField::from_fn(&grid, |x| a / (b * x).cosh().powi(2));
        let seed = &exact * 0.9;
        let res = petviashvili_scalar(&f, nu, &seed, 1e-13, 5000).unwrap();
        assert!(res.residual < 1e-10, "residual {}", res.residual);
        assert!((res.stabilizer - 1.0).abs() < 1e-6);
        let (dist, _) = crate::spectral::aligned_h1_distance(&exact, &res.w);
        let rel = dist / exact.sobolev_norm(1.0).unwrap();
        assert!(rel < 1e-7, "relative H1 distance {rel}");
    }
}
