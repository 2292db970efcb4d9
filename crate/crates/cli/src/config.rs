//! Run configuration: a single JSON document, with command-line flags
//! overriding file fields. Every resolved run records its RNG seed so that
//! identical configurations reproduce byte-identical summaries.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub backend: Option<String>,
    pub symbol: Option<String>,
    pub q: Option<f64>,
    pub q_ladder: Option<Vec<f64>>,
    /// Explicit ball radius R.
    pub r: Option<f64>,
    /// Ball policy R^2 = c q (default c = 50).
    pub r_sq_over_q: Option<f64>,
    pub grid_n: Option<usize>,
    pub grid_p: Option<f64>,
    pub tol_residual: Option<f64>,
    pub max_iters: Option<u64>,
    pub q_ceiling: Option<f64>,
    pub out_dir: Option<PathBuf>,
    pub rng_seed: Option<u64>,
    pub strict_symbol: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Wb,
    Scalar,
}

#[derive(Debug, Clone)]
pub enum QSpec {
    Single(f64),
    Ladder(Vec<f64>),
}

#[derive(Debug, Clone, Copy)]
pub enum RPolicy {
    SqOverQ(f64),
    Fixed(f64),
}

impl RPolicy {
    pub fn radius_for(&self, q: f64) -> f64 {
        match *self {
            RPolicy::SqOverQ(c) => (c * q).sqrt(),
            RPolicy::Fixed(r) => r,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub enum GridPolicy {
    Auto,
    Explicit { n: usize, p: f64 },
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub backend: Backend,
    pub symbol: String,
    pub q_spec: QSpec,
    pub r_policy: RPolicy,
    pub grid: GridPolicy,
    pub tol_residual: f64,
    pub max_iters: u64,
    pub q_ceiling: f64,
    pub out_dir: PathBuf,
    pub rng_seed: u64,
    pub strict_symbol: bool,
}

pub struct Overrides {
    pub backend: Option<String>,
    pub symbol: Option<String>,
    pub q: Option<f64>,
    pub q_ladder: Option<Vec<f64>>,
    pub r: Option<f64>,
    pub r_sq_over_q: Option<f64>,
    pub grid_n: Option<usize>,
    pub grid_p: Option<f64>,
    pub tol: Option<f64>,
    pub max_iters: Option<u64>,
    pub q_ceiling: Option<f64>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub strict: bool,
}

/// Merge file and flags (flags win) and validate the combination.
/// `want_ladder` selects between the solve (single q) and sweep (ladder)
/// shapes of the configuration.
pub fn resolve(
    file: FileConfig,
    flags: Overrides,
    want_ladder: bool,
) -> Result<Resolved, String> {
    let backend = match flags
        .backend
        .or(file.backend)
        .unwrap_or_else(|| "wb".into())
        .as_str()
    {
        "wb" => Backend::Wb,
        "scalar" => Backend::Scalar,
        other => return Err(format!("backend: unknown value `{other}` (wb | scalar)")),
    };

    let symbol = flags
        .symbol
        .or(file.symbol)
        .unwrap_or_else(|| "bdw".into());

    let q = flags.q.or(file.q);
    let ladder = flags.q_ladder.or(file.q_ladder);
    let q_spec = match (q, ladder, want_ladder) {
        (Some(_), Some(_), _) => {
            return Err("q: exactly one of q and q_ladder may be present".into())
        }
        (Some(q), None, false) => {
            if q <= 0.0 {
                return Err("q: q must be positive".into());
            }
            QSpec::Single(q)
        }
        (None, Some(l), true) => {
            if l.is_empty() {
                return Err("q_ladder: ladder must not be empty".into());
            }
            if l.iter().any(|&v| v <= 0.0) {
                return Err("q_ladder: q must be positive".into());
            }
            if l.windows(2).any(|w| w[1] <= w[0]) {
                return Err("q_ladder: ladder must be strictly increasing".into());
            }
            QSpec::Ladder(l)
        }
        (None, None, false) => return Err("q: solve requires a q value".into()),
        (None, None, true) => return Err("q_ladder: sweep requires a q ladder".into()),
        (Some(_), None, true) => {
            return Err("q_ladder: sweep requires a q ladder, found single q".into())
        }
        (None, Some(_), false) => {
            return Err("q: solve requires a single q, found q_ladder".into())
        }
    };

    let r_policy = match (flags.r.or(file.r), flags.r_sq_over_q.or(file.r_sq_over_q)) {
        (Some(_), Some(_)) => {
            return Err("r: give either r or r_sq_over_q, not both".into())
        }
        (Some(r), None) => {
            if r <= 0.0 {
                return Err("r: ball radius must be positive".into());
            }
            RPolicy::Fixed(r)
        }
        (None, Some(c)) => {
            if c <= 0.0 {
                return Err("r_sq_over_q: factor must be positive".into());
            }
            RPolicy::SqOverQ(c)
        }
        (None, None) => RPolicy::SqOverQ(50.0),
    };

    let grid = match (flags.grid_n.or(file.grid_n), flags.grid_p.or(file.grid_p)) {
        (None, None) => GridPolicy::Auto,
        (Some(n), Some(p)) => {
            if p <= 0.0 {
                return Err("grid_p: period must be positive".into());
            }
            if !n.is_power_of_two() || n < 4 {
                return Err("grid_n: size must be a power of two >= 4".into());
            }
            GridPolicy::Explicit { n, p }
        }
        _ => return Err("grid_n: explicit grids need both grid_n and grid_p".into()),
    };

    let tol_residual = flags.tol.or(file.tol_residual).unwrap_or(1e-9);
    if tol_residual <= 0.0 {
        return Err("tol_residual: tolerance must be positive".into());
    }
    let q_ceiling = flags.q_ceiling.or(file.q_ceiling).unwrap_or(0.05);
    match &q_spec {
        QSpec::Single(q) if *q >= q_ceiling => {
            return Err(format!("q: q = {q} reaches the ceiling {q_ceiling}"))
        }
        QSpec::Ladder(l) if l.iter().any(|q| *q >= q_ceiling) => {
            return Err(format!("q_ladder: ladder crosses the ceiling {q_ceiling}"))
        }
        _ => {}
    }

    Ok(Resolved {
        backend,
        symbol,
        q_spec,
        r_policy,
        grid,
        tol_residual,
        max_iters: flags.max_iters.or(file.max_iters).unwrap_or(200_000),
        q_ceiling,
        out_dir: flags
            .out
            .or(file.out_dir)
            .unwrap_or_else(|| PathBuf::from("solwave_run")),
        rng_seed: flags.seed.or(file.rng_seed).unwrap_or(0),
        strict_symbol: flags.strict || file.strict_symbol.unwrap_or(false),
    })
}

pub fn load_file(path: Option<&std::path::Path>) -> Result<FileConfig, String> {
    match path {
        None => Ok(FileConfig::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| format!("config: cannot read {}: {e}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("config: {e}"))
        }
    }
}
