//! Periodic grids, discrete Fourier machinery, multiplier operators, Sobolev
//! norms, periodization of line profiles, and the off-support decay probe.
//!
//! Conventions: a field on the period-P grid has nodes x_j = -P/2 + j P/N and
//! normalized coefficients w_hat(k) = P^(-1/2) int w(x) exp(-2 pi i k x / P) dx,
//! so that sum |w_hat(k)|^2 equals the trapezoidal quadrature of w^2 exactly.
//! Grids use power-of-two sizes; the lone Nyquist mode is dropped whenever a
//! nonlinear evaluation re-enters spectral space.

mod decay;
mod field;
mod grid;
mod multiplier;
mod periodize;
mod transform;

pub use decay::{kernel_decay_report, DecayFit};
pub use field::{aligned_h1_distance, best_alignment, WaveField};
pub use grid::PeriodicGrid;
pub use multiplier::MultiplierOperator;
pub use periodize::{periodize, LineProfile};

use crate::error::{Error, Result};

/// Grid auto-sizing: the period follows the long-wave width scale q^(-beta),
/// and the resolution doubles until the profile's spectral tail beyond
/// |k| > N/4 carries less than 1e-12 of the total mass.
pub fn auto_sized_grid(q: f64, beta: f64, profile: impl Fn(f64) -> f64) -> Result<PeriodicGrid> {
    if q <= 0.0 {
        return Err(Error::Config(format!("q must be positive, got {q}")));
    }
    let period = 64.0f64.max(40.0 * q.powf(-beta));
    let mut size = 128usize;
    loop {
        let grid = PeriodicGrid::new(period, size)?;
        let field = WaveField::from_fn(&grid, &profile);
        let ratio = field.tail_mass_ratio(size / 4);
        if ratio < 1e-12 {
            return Ok(grid);
        }
        size *= 2;
        if size > 1 << 15 {
            return Err(Error::UnderResolved {
                tail_ratio: ratio,
                limit: 1e-12,
            });
        }
    }
}
