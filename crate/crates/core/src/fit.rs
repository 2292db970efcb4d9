//! Least-squares line fits used by the decay and convergence diagnostics.

/// Ordinary least squares through (x, y) pairs; returns (slope, intercept).
pub fn linear_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    assert!(points.len() >= 2, "need at least two points to fit a line");
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    (slope, intercept)
}

/// Log-log slope fit: y ~ C x^slope. Returns (slope, ln C), or NaNs when
/// fewer than two points survive the positivity filter.
pub fn loglog_fit(points: &[(f64, f64)]) -> (f64, f64) {
    let transformed: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|&(x, y)| (x.ln(), y.ln()))
        .collect();
    if transformed.len() < 2 {
        return (f64::NAN, f64::NAN);
    }
    linear_fit(&transformed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_line() {
        let pts: Vec<(f64, f64)> = (0..20).map(|i| (i as f64, 3.0 * i as f64 - 1.5)).collect();
        let (a, b) = linear_fit(&pts);
        assert!((a - 3.0).abs() < 1e-12);
        assert!((b + 1.5).abs() < 1e-12);
    }

    #[test]
    fn recovers_power_law() {
        let pts: Vec<(f64, f64)> = (1..30).map(|i| (i as f64, 5.0 * (i as f64).powf(-2.5))).collect();
        let (slope, lnc) = loglog_fit(&pts);
        assert!((slope + 2.5).abs() < 1e-10);
        assert!((lnc.exp() - 5.0).abs() < 1e-9);
    }
}
