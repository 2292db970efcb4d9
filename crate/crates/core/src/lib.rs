//! Pseudo-spectral variational solver for solitary waves of fully dispersive
//! Whitham-Boussinesq systems and scalar Whitham-type equations.
//!
//! Travelling waves are computed as constrained minimizers of a nonlocal
//! energy over spheres {I(w) = q} in periodic Sobolev spaces, with an H1-ball
//! penalization keeping the problem coercive. The crate provides
//!
//! - [`symbols`]: admissible Fourier multiplier symbols m(k) and their
//!   long-wave Taylor data,
//! - [`spectral`]: periodic grids, transforms, the multiplier operator K,
//!   Sobolev norms, periodization of line profiles, kernel decay probes,
//! - [`functionals`]: the energies, constraint, penalization and analytic
//!   first variations for both the system and the scalar backend,
//! - [`minimizer`]: projected-gradient descent on the constraint sphere with
//!   continuation in q, plus an independent Petviashvili fixed-point oracle,
//! - [`longwave`]: the KdV-type limit functional, its explicit sech^2 ground
//!   state, the long-wave scaling and its convergence diagnostics,
//! - [`waves`]: reconstruction of physical wave profiles (eta, u, c) with
//!   residual and regularity reports,
//! - [`scalar`]: the scalar travelling-wave backend sharing all machinery.

pub mod error;
pub mod export;
pub mod fit;
pub mod functionals;
pub mod longwave;
pub mod minimizer;
pub mod scalar;
pub mod spectral;
pub mod symbols;
pub mod waves;

pub use error::{Error, Result};
