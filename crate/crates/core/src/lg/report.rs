use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use super::state::RotationAngle;
use super::stats::{k_theoretical, KStatistic};
use crate::error::{Error, Result};

/// The four `ΩΔt/π` values used for the experimental table.
pub fn table_thetas() -> [f64; 4] {
    [1.0 / 3.0, 0.5, 0.712, 1.0]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub theta_over_pi: f64,
    pub k_exp: f64,
    pub k_theor: f64,
}

impl TableRow {
    pub fn new(theta: RotationAngle, measured: &KStatistic) -> Self {
        TableRow {
            theta_over_pi: theta.over_pi(),
            k_exp: measured.k,
            k_theor: k_theoretical(theta),
        }
    }
}

fn write_text(path: &Path, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Result<()> {
    let file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    body(&mut w).and_then(|_| w.flush()).map_err(|e| Error::io(path, e))
}

pub fn write_table_csv(path: &Path, rows: &[TableRow]) -> Result<()> {
    write_text(path, |w| {
        writeln!(w, "theta_over_pi,k_exp,k_theor")?;
        for r in rows {
            writeln!(w, "{:.6},{:.6},{:.6}", r.theta_over_pi, r.k_exp, r.k_theor)?;
        }
        Ok(())
    })
}

/// Single-experiment report: correlations, K, theory and classification.
pub fn write_k_report(path: &Path, theta: RotationAngle, n_shots: usize, k: &KStatistic) -> Result<()> {
    write_text(path, |w| {
        writeln!(w, "theta_over_pi,n_shots,c21,c32,c31,k_exp,k_theor,classification")?;
        writeln!(
            w,
            "{:.6},{},{:.6},{:.6},{:.6},{:.6},{:.6},{}",
            theta.over_pi(),
            n_shots,
            k.c21,
            k.c32,
            k.c31,
            k.k,
            k_theoretical(theta),
            k.classification
        )
    })
}

pub fn write_cumulative_csv(path: &Path, series: &[(usize, f64)]) -> Result<()> {
    write_text(path, |w| {
        writeln!(w, "shot_count,k")?;
        for (m, k) in series {
            writeln!(w, "{m},{k:.6}")?;
        }
        Ok(())
    })
}
