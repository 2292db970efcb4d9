use std::ops::{Add, Mul, Sub};

use rustfft::num_complex::Complex64;

use super::grid::PeriodicGrid;
use super::transform::{fft_forward, fft_inverse};
use crate::error::{Error, Result};

/// Real periodic function held as collocation samples together with its
/// normalized spectral coefficients, kept consistent at all times.
///
/// Coefficient slot i stores w_hat(k(i)) with k(i) = i for i < N/2 and
/// i - N otherwise; the extra (-1)^i phase relative to a plain DFT accounts
/// for the nodes starting at -P/2.
#[derive(Clone, Debug)]
pub struct WaveField {
    grid: PeriodicGrid,
    samples: Vec<f64>,
    coeffs: Vec<Complex64>,
}

impl WaveField {
    pub fn from_samples(grid: &PeriodicGrid, samples: Vec<f64>) -> WaveField {
        assert_eq!(samples.len(), grid.size(), "sample count must match grid");
        let n = grid.size();
        let scale = grid.period().sqrt() / n as f64;
        let mut buf: Vec<Complex64> = samples.iter().map(|&s| Complex64::new(s, 0.0)).collect();
        fft_forward(&mut buf);
        let coeffs = buf
            .iter()
            .enumerate()
            .map(|(i, &x)| x * scale * sign(i))
            .collect();
        WaveField {
            grid: grid.clone(),
            samples,
            coeffs,
        }
    }

    pub fn from_coeffs(grid: &PeriodicGrid, mut coeffs: Vec<Complex64>) -> WaveField {
        assert_eq!(coeffs.len(), grid.size(), "coefficient count must match grid");
        hermitian_symmetrize(&mut coeffs);
        let inv_scale = 1.0 / grid.period().sqrt();
        let mut buf: Vec<Complex64> = coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * sign(i))
            .collect();
        fft_inverse(&mut buf);
        let samples = buf.iter().map(|x| x.re * inv_scale).collect();
        WaveField {
            grid: grid.clone(),
            samples,
            coeffs,
        }
    }

    pub fn from_fn(grid: &PeriodicGrid, f: impl Fn(f64) -> f64) -> WaveField {
        let samples = (0..grid.size()).map(|j| f(grid.node(j))).collect();
        WaveField::from_samples(grid, samples)
    }

    pub fn zeros(grid: &PeriodicGrid) -> WaveField {
        WaveField {
            grid: grid.clone(),
            samples: vec![0.0; grid.size()],
            coeffs: vec![Complex64::new(0.0, 0.0); grid.size()],
        }
    }

    pub fn constant(grid: &PeriodicGrid, a: f64) -> WaveField {
        WaveField::from_fn(grid, |_| a)
    }

    pub fn grid(&self) -> &PeriodicGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient for signed wavenumber index k (0 outside the band).
    pub fn coeff(&self, k: i64) -> Complex64 {
        self.grid
            .slot(k)
            .map(|i| self.coeffs[i])
            .unwrap_or_else(|| Complex64::new(0.0, 0.0))
    }

    /// Trapezoidal quadrature of the samples over one period.
    pub fn integral(&self) -> f64 {
        self.grid.dx() * self.samples.iter().sum::<f64>()
    }

    /// L2 inner product by quadrature (equals the spectral sum by Parseval).
    pub fn l2_inner(&self, other: &WaveField) -> f64 {
        debug_assert_eq!(self.grid, other.grid);
        self.grid.dx()
            * self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a * b)
                .sum::<f64>()
    }

    pub fn l2_norm_sq(&self) -> f64 {
        self.l2_inner(self)
    }

    /// Discrete H^s_P norm, (sum_k (1 + kappa_k^2)^s |w_hat(k)|^2)^(1/2).
    pub fn sobolev_norm(&self, s: f64) -> Result<f64> {
        if s < 0.0 {
            return Err(Error::Config(format!("Sobolev index must be >= 0, got {s}")));
        }
        let mut total = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let kappa = self.grid.wavenumber(i);
            total += (1.0 + kappa * kappa).powf(s) * c.norm_sqr();
        }
        Ok(total.sqrt())
    }

    pub fn h1_norm_sq(&self) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let kappa = self.grid.wavenumber(i);
                (1.0 + kappa * kappa) * c.norm_sqr()
            })
            .sum()
    }

    /// Fraction of spectral mass on modes with |k| > cutoff.
    pub fn tail_mass_ratio(&self, cutoff: usize) -> f64 {
        let mut tail = 0.0;
        let mut total = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let mass = c.norm_sqr();
            total += mass;
            if self.grid.wave_index(i).unsigned_abs() as usize > cutoff {
                tail += mass;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            tail / total
        }
    }

    pub fn min_sample(&self) -> f64 {
        self.samples.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max_sample(&self) -> f64 {
        self.samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn linf(&self) -> f64 {
        self.samples.iter().fold(0.0f64, |m, &s| m.max(s.abs()))
    }

    /// Pointwise map of the samples (re-transforms).
    pub fn map(&self, f: impl Fn(f64) -> f64) -> WaveField {
        WaveField::from_samples(&self.grid, self.samples.iter().map(|&s| f(s)).collect())
    }

    /// Copy with the unpaired Nyquist mode removed. Nonlinear evaluations
    /// re-entering spectral space go through this projection.
    pub fn with_nyquist_zeroed(&self) -> WaveField {
        let mut coeffs = self.coeffs.clone();
        coeffs[self.grid.size() / 2] = Complex64::new(0.0, 0.0);
        WaveField::from_coeffs(&self.grid, coeffs)
    }

    /// Spectral derivative; the Nyquist mode is dropped to keep the result real.
    pub fn derivative(&self) -> WaveField {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if self.grid.wave_index(i) == -(self.grid.size() as i64) / 2 {
                    Complex64::new(0.0, 0.0)
                } else {
                    c * Complex64::new(0.0, self.grid.wavenumber(i))
                }
            })
            .collect();
        WaveField::from_coeffs(&self.grid, coeffs)
    }

    /// Continuum translation: returns x -> w(x - a).
    pub fn shifted(&self, a: f64) -> WaveField {
        let p = self.grid.period();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if self.grid.wave_index(i) == -(self.grid.size() as i64) / 2 {
                    Complex64::new(0.0, 0.0)
                } else {
                    let theta = -2.0 * std::f64::consts::PI * self.grid.wave_index(i) as f64 * a / p;
                    c * Complex64::from_polar(1.0, theta)
                }
            })
            .collect();
        WaveField::from_coeffs(&self.grid, coeffs)
    }

    /// Circular shift by whole grid steps: new[j] = old[(j + offset) mod N].
    pub fn rotated(&self, offset: isize) -> WaveField {
        let n = self.grid.size() as isize;
        let samples = (0..n)
            .map(|j| self.samples[(j + offset).rem_euclid(n) as usize])
            .collect();
        WaveField::from_samples(&self.grid, samples)
    }

    /// Same period, `factor` times the modes; band-limited interpolation.
    /// The source Nyquist mode is dropped.
    pub fn upsampled(&self, factor: usize) -> WaveField {
        let fine = self.grid.refined(factor);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); fine.size()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let k = self.grid.wave_index(i);
            if k == -(self.grid.size() as i64) / 2 {
                continue;
            }
            coeffs[fine.slot(k).expect("refined grid holds all source modes")] = c;
        }
        WaveField::from_coeffs(&fine, coeffs)
    }

    /// Orthogonal projection onto the band of a coarser grid with the same
    /// period. The target Nyquist mode is zeroed.
    pub fn projected_to(&self, target: &PeriodicGrid) -> WaveField {
        assert_eq!(
            target.period(),
            self.grid.period(),
            "projection requires matching periods"
        );
        let half = target.size() as i64 / 2;
        let mut coeffs = vec![Complex64::new(0.0, 0.0); target.size()];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let k = target.wave_index(i);
            if k > -half && k < half {
                *c = self.coeff(k);
            }
        }
        WaveField::from_coeffs(target, coeffs)
    }

    /// Trigonometric interpolation onto an arbitrary grid. Evaluation points
    /// are wrapped into the source period, so widening the window replicates
    /// the profile periodically.
    pub fn resample_to(&self, target: &PeriodicGrid) -> WaveField {
        WaveField::from_fn(target, |x| self.eval(x))
    }

    /// Evaluate the trigonometric interpolant at an arbitrary point.
    pub fn eval(&self, x: f64) -> f64 {
        let p = self.grid.period();
        let inv_sqrt_p = 1.0 / p.sqrt();
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let theta = 2.0 * std::f64::consts::PI * self.grid.wave_index(i) as f64 * x / p;
            acc += c * Complex64::from_polar(1.0, theta);
        }
        acc.re * inv_sqrt_p
    }

    /// |w_hat(k)| per signed wavenumber, ordered by k.
    pub fn spectrum(&self) -> Vec<(i64, f64)> {
        let mut rows: Vec<(i64, f64)> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (self.grid.wave_index(i), c.norm()))
            .collect();
        rows.sort_by_key(|r| r.0);
        rows
    }
}

fn sign(i: usize) -> f64 {
    if i.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn hermitian_symmetrize(coeffs: &mut [Complex64]) {
    let n = coeffs.len();
    coeffs[0] = Complex64::new(coeffs[0].re, 0.0);
    coeffs[n / 2] = Complex64::new(coeffs[n / 2].re, 0.0);
    for i in 1..n / 2 {
        let avg = 0.5 * (coeffs[i] + coeffs[n - i].conj());
        coeffs[i] = avg;
        coeffs[n - i] = avg.conj();
    }
}

impl Add for &WaveField {
    type Output = WaveField;
    fn add(self, rhs: &WaveField) -> WaveField {
        debug_assert_eq!(self.grid, rhs.grid);
        WaveField {
            grid: self.grid.clone(),
            samples: self
                .samples
                .iter()
                .zip(&rhs.samples)
                .map(|(a, b)| a + b)
                .collect(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &WaveField {
    type Output = WaveField;
    fn sub(self, rhs: &WaveField) -> WaveField {
        debug_assert_eq!(self.grid, rhs.grid);
        WaveField {
            grid: self.grid.clone(),
            samples: self
                .samples
                .iter()
                .zip(&rhs.samples)
                .map(|(a, b)| a - b)
                .collect(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul<f64> for &WaveField {
    type Output = WaveField;
    fn mul(self, c: f64) -> WaveField {
        WaveField {
            grid: self.grid.clone(),
            samples: self.samples.iter().map(|a| a * c).collect(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

/// Translation tau maximizing <a, b(. - tau)>, found by an FFT correlation
/// scan over grid shifts and polished by Newton steps on the trigonometric
/// interpolant of the correlation.
pub fn best_alignment(a: &WaveField, b: &WaveField) -> f64 {
    debug_assert_eq!(a.grid(), b.grid());
    let grid = a.grid();
    let n = grid.size();
    let p = grid.period();
    let two_pi = 2.0 * std::f64::consts::PI;

    let z: Vec<Complex64> = a
        .coeffs
        .iter()
        .zip(&b.coeffs)
        .map(|(x, y)| x * y.conj())
        .collect();

    let corr = |tau: f64| -> (f64, f64, f64) {
        let mut phi = 0.0;
        let mut dphi = 0.0;
        let mut ddphi = 0.0;
        for (i, &zi) in z.iter().enumerate() {
            let k = grid.wave_index(i) as f64;
            let omega = two_pi * k / p;
            let rot = zi * Complex64::from_polar(1.0, omega * tau);
            phi += rot.re;
            dphi += -omega * rot.im;
            ddphi += -omega * omega * rot.re;
        }
        (phi, dphi, ddphi)
    };

    // Coarse scan over node shifts.
    let mut best = (f64::NEG_INFINITY, 0.0);
    for j in 0..n {
        let tau = grid.node(j);
        let (phi, _, _) = corr(tau);
        if phi > best.0 {
            best = (phi, tau);
        }
    }
    let mut tau = best.1;
    for _ in 0..12 {
        let (_, dphi, ddphi) = corr(tau);
        if ddphi >= 0.0 {
            break;
        }
        let step = dphi / ddphi;
        tau -= step;
        if step.abs() < 1e-14 * p {
            break;
        }
    }
    tau
}

/// H1 distance between a and the best translate of b, with the shift used.
pub fn aligned_h1_distance(a: &WaveField, b: &WaveField) -> (f64, f64) {
    let tau = best_alignment(a, b);
    let diff = a - &b.shifted(tau);
    (diff.sobolev_norm(1.0).expect("s = 1"), tau)
}
