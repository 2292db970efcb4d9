use std::sync::Arc;

use rustfft::num_complex::Complex64;

use super::field::WaveField;
use super::grid::PeriodicGrid;
use crate::error::{Error, Result};
use crate::symbols::Symbol;

/// Diagonal realization of the operator (Kf)^hat(k) = m(kappa_k) f_hat(k)
/// on a fixed grid. The diagonal is real and even in +-k, so K is
/// self-adjoint and maps real fields to real fields.
#[derive(Clone, Debug)]
pub struct MultiplierOperator {
    symbol: Arc<Symbol>,
    grid: PeriodicGrid,
    diagonal: Vec<f64>,
}

impl MultiplierOperator {
    pub fn new(symbol: Arc<Symbol>, grid: &PeriodicGrid) -> MultiplierOperator {
        let diagonal = (0..grid.size())
            .map(|i| symbol.eval(grid.wavenumber(i)))
            .collect();
        MultiplierOperator {
            symbol,
            grid: grid.clone(),
            diagonal,
        }
    }

    pub fn symbol(&self) -> &Arc<Symbol> {
        &self.symbol
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diagonal
    }

    fn check_grid(&self, w: &WaveField) -> Result<()> {
        if *w.grid() != self.grid {
            return Err(Error::GridMismatch {
                expected_period: self.grid.period(),
                expected_size: self.grid.size(),
                got_period: w.grid().period(),
                got_size: w.grid().size(),
            });
        }
        Ok(())
    }

    /// Apply K: multiply each coefficient by the symbol on its mode.
    pub fn apply(&self, w: &WaveField) -> Result<WaveField> {
        self.check_grid(w)?;
        let coeffs: Vec<Complex64> = w
            .coeffs()
            .iter()
            .zip(&self.diagonal)
            .map(|(c, d)| c * *d)
            .collect();
        Ok(WaveField::from_coeffs(&self.grid, coeffs))
    }

    /// Quadratic form <Kw, w> computed spectrally.
    pub fn quadratic_form(&self, w: &WaveField) -> Result<f64> {
        self.check_grid(w)?;
        Ok(w.coeffs()
            .iter()
            .zip(&self.diagonal)
            .map(|(c, d)| d * c.norm_sqr())
            .sum())
    }

    /// <(K - m(0)) w, w>, with the zero-order bulk removed per mode. On the
    /// constraint sphere the plain form is dominated by m(0) <w, w>; this
    /// variant keeps the (nonpositive) gap part at full relative accuracy.
    pub fn gap_quadratic_form(&self, w: &WaveField) -> Result<f64> {
        self.check_grid(w)?;
        let m0 = self.symbol.m_at_zero();
        Ok(w.coeffs()
            .iter()
            .zip(&self.diagonal)
            .map(|(c, d)| (d - m0) * c.norm_sqr())
            .sum())
    }

    /// Apply the resolvent (lambda - K)^(-1); requires lambda above m(0).
    pub fn shifted_inverse(&self, lambda: f64, w: &WaveField) -> Result<WaveField> {
        self.check_grid(w)?;
        if lambda <= self.symbol.m_at_zero() {
            return Err(Error::SingularShift {
                lambda,
                m_at_zero: self.symbol.m_at_zero(),
            });
        }
        let coeffs: Vec<Complex64> = w
            .coeffs()
            .iter()
            .zip(&self.diagonal)
            .map(|(c, d)| c / (lambda - d))
            .collect();
        Ok(WaveField::from_coeffs(&self.grid, coeffs))
    }
}
