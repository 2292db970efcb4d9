//! Machine-readable exports: CSV field/spectrum dumps and number formatting.
//! CSV files carry a header row, '.' decimal separator, scientific notation
//! with 17 significant digits.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::Result;
use crate::spectral::WaveField;
use crate::waves::SolitaryWave;

/// Scientific notation with 17 significant digits.
pub fn sci(v: f64) -> String {
    format!("{v:.16e}")
}

/// (x, w) rows.
pub fn write_field_csv(path: &Path, w: &WaveField) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "x,w")?;
    for (j, &s) in w.samples().iter().enumerate() {
        writeln!(out, "{},{}", sci(w.grid().node(j)), sci(s))?;
    }
    Ok(())
}

/// (x, w, u, eta) rows for a reconstructed wave.
pub fn write_wave_csv(path: &Path, wave: &SolitaryWave) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "x,w,u,eta")?;
    let grid = wave.w.grid();
    for j in 0..grid.size() {
        writeln!(
            out,
            "{},{},{},{}",
            sci(grid.node(j)),
            sci(wave.w.samples()[j]),
            sci(wave.u.samples()[j]),
            sci(wave.eta.samples()[j]),
        )?;
    }
    Ok(())
}

/// (k, |w_hat(k)|) rows ordered by wavenumber.
pub fn write_spectrum_csv(path: &Path, w: &WaveField) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "k,abs_coeff")?;
    for (k, mag) in w.spectrum() {
        writeln!(out, "{k},{}", sci(mag))?;
    }
    Ok(())
}

/// (q, ratio, defect) rows of a long-wave convergence report.
pub fn write_convergence_csv(
    path: &Path,
    report: &crate::longwave::ConvergenceReport,
) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    writeln!(out, "q,ratio,defect")?;
    for row in &report.rows {
        writeln!(out, "{},{},{}", sci(row.q), sci(row.ratio), sci(row.defect))?;
    }
    Ok(())
}
