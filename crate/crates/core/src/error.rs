use thiserror::Error;

/// Unified error type for the solver crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("grid mismatch: operator on (P={expected_period}, N={expected_size}), field on (P={got_period}, N={got_size})")]
    GridMismatch {
        expected_period: f64,
        expected_size: usize,
        got_period: f64,
        got_size: usize,
    },

    #[error("amplitude guard violated: max |w| = {max_abs:.6e} exceeds {limit}")]
    Amplitude { max_abs: f64, limit: f64 },

    #[error("domain error: 1 + w reaches {min_arg:.6e}, sqrt undefined")]
    Domain { min_arg: f64 },

    #[error("invalid symbol `{name}`: clause `{clause}` failed")]
    InvalidSymbol { name: String, clause: String },

    #[error("degenerate symbol: no nonvanishing even derivative up to order {max_order}")]
    DegenerateSymbol { max_order: u32 },

    #[error("support condition violated: standoff {standoff:.3} < required {required:.3}")]
    SupportFit { standoff: f64, required: f64 },

    #[error("cannot project the zero field onto the constraint sphere")]
    CannotProject,

    #[error("initial point outside the admissible ball: |w|_H1^2 = {h1_sq:.6e} >= {bound:.6e}")]
    OutsideAdmissible { h1_sq: f64, bound: f64 },

    #[error("no convergence after {iterations} iterations, residual {residual:.6e}")]
    NoConvergence {
        iterations: u64,
        residual: f64,
        history: Vec<f64>,
    },

    #[error("boundary minimizer: penalty active at convergence, |w|_H1^2 = {h1_sq:.6e} vs R^2 = {r_sq:.6e}")]
    BoundaryMinimizer { h1_sq: f64, r_sq: f64 },

    #[error("non-wave multiplier: lambda = {lambda:.6e} <= 0, speed undefined")]
    NonWaveMultiplier { lambda: f64 },

    #[error("grid under-resolved: spectral tail mass ratio {tail_ratio:.6e} above {limit:.1e}")]
    UnderResolved { tail_ratio: f64, limit: f64 },

    #[error("no closed-form ground state for j* = {j_star}; only j* = 1 is supported")]
    UnsupportedGroundState { j_star: u32 },

    #[error("spectrally singular shift: lambda = {lambda:.6e} does not dominate m(0) = {m_at_zero:.6e}")]
    SingularShift { lambda: f64, m_at_zero: f64 },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
