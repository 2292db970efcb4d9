use std::sync::Arc;

use super::field::WaveField;
use super::grid::PeriodicGrid;
use crate::error::{Error, Result};

/// Numerical support floor: a profile counts as compactly supported when it
/// stays below this level outside its declared support interval.
pub const SUPPORT_FLOOR: f64 = 1e-13;

/// A line profile with compact numerical support, the input of periodization.
#[derive(Clone)]
pub struct LineProfile {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    center: f64,
    radius: f64,
}

impl LineProfile {
    /// Declare a profile supported in [center - radius, center + radius].
    /// The declaration is spot-checked just outside the interval.
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        center: f64,
        radius: f64,
    ) -> Result<LineProfile> {
        if radius <= 0.0 {
            return Err(Error::Config("support radius must be positive".into()));
        }
        for i in 0..64 {
            let d = radius * (1.0 + 0.25 * (i as f64) / 63.0);
            for x in [center - d, center + d] {
                let v = f(x).abs();
                if v > SUPPORT_FLOOR {
                    return Err(Error::Config(format!(
                        "profile is {v:.3e} at x = {x:.3}, outside the declared support"
                    )));
                }
            }
        }
        Ok(LineProfile {
            f: Arc::new(f),
            center,
            radius,
        })
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Distance from the support interval to the window edges +-P/2.
    pub fn standoff(&self, period: f64) -> f64 {
        let lo = self.center - self.radius + period / 2.0;
        let hi = period / 2.0 - (self.center + self.radius);
        lo.min(hi)
    }
}

/// Wrap a compactly supported line profile onto the period-P torus,
/// w_P = sum_j w(x + jP). The support must keep a standoff of at least
/// P^(1/4)/2 from the window edges; inside the window only the j = 0 copy
/// contributes above the support floor, and the constraint integral of the
/// wrapped field equals the line integral exactly at the quadrature level.
pub fn periodize(profile: &LineProfile, grid: &PeriodicGrid) -> Result<WaveField> {
    let p = grid.period();
    let standoff = profile.standoff(p);
    let required = 0.5 * p.powf(0.25);
    if standoff < required {
        return Err(Error::SupportFit { standoff, required });
    }
    Ok(WaveField::from_fn(grid, |x| {
        profile.eval(x - p) + profile.eval(x) + profile.eval(x + p)
    }))
}
