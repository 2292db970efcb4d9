use serde::Serialize;

use crate::error::{Error, Result};

/// Equispaced periodic grid: period P, power-of-two size N, nodes
/// x_j = -P/2 + j P / N, wavenumbers kappa_k = 2 pi k / P for
/// k in {-N/2, ..., N/2 - 1}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PeriodicGrid {
    period: f64,
    size: usize,
}

impl PeriodicGrid {
    pub fn new(period: f64, size: usize) -> Result<Self> {
        if period <= 0.0 || !period.is_finite() {
            return Err(Error::Config(format!("period must be positive, got {period}")));
        }
        if size < 4 || !size.is_power_of_two() {
            return Err(Error::Config(format!(
                "grid size must be a power of two >= 4, got {size}"
            )));
        }
        Ok(PeriodicGrid { period, size })
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn dx(&self) -> f64 {
        self.period / self.size as f64
    }

    pub fn node(&self, j: usize) -> f64 {
        -self.period / 2.0 + (j as f64) * self.dx()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.size).map(|j| self.node(j)).collect()
    }

    /// Signed integer wavenumber index for FFT storage slot i.
    pub fn wave_index(&self, i: usize) -> i64 {
        if i < self.size / 2 {
            i as i64
        } else {
            i as i64 - self.size as i64
        }
    }

    /// Physical wavenumber kappa = 2 pi k / P for FFT storage slot i.
    pub fn wavenumber(&self, i: usize) -> f64 {
        2.0 * std::f64::consts::PI * self.wave_index(i) as f64 / self.period
    }

    /// FFT storage slot for a signed wavenumber index, if representable.
    pub fn slot(&self, k: i64) -> Option<usize> {
        let half = self.size as i64 / 2;
        if k >= 0 && k < half {
            Some(k as usize)
        } else if k >= -half && k < 0 {
            Some((k + self.size as i64) as usize)
        } else {
            None
        }
    }

    /// The refined grid with the same period and `factor` times the modes.
    pub fn refined(&self, factor: usize) -> PeriodicGrid {
        PeriodicGrid {
            period: self.period,
            size: self.size * factor,
        }
    }
}
