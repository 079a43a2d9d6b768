use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::NumberField;
use crate::sieve::CoefficientTable;

const DENSE_LIMIT: u64 = 1000;
const GEOMETRIC_POINTS: usize = 1000;
const ALPHA_RANGE: (f64, f64) = (0.01, 0.99);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub x: f64,
    pub f1: f64,
}

/// Envelope |f_1(x)| <= c_k x^alpha, valid at every point of `grid`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorFit {
    pub alpha: f64,
    pub c_k: f64,
    /// Unclamped least-squares slope when alpha was fitted.
    pub fitted_slope: Option<f64>,
    pub grid: Vec<GridPoint>,
}

impl ErrorFit {
    pub fn envelope(&self, x: f64) -> f64 {
        self.c_k * x.powf(self.alpha)
    }
}

/// Integers 1..=min(1000, X) followed by 1000 geometric points in (1000, X].
pub fn envelope_grid(limit: u64) -> Vec<f64> {
    let mut grid: Vec<f64> = (1..=limit.min(DENSE_LIMIT)).map(|n| n as f64).collect();
    if limit > DENSE_LIMIT {
        let ratio = (limit as f64 / DENSE_LIMIT as f64).ln();
        for i in 1..=GEOMETRIC_POINTS {
            let x = if i == GEOMETRIC_POINTS {
                limit as f64
            } else {
                DENSE_LIMIT as f64 * (ratio * i as f64 / GEOMETRIC_POINTS as f64).exp()
            };
            grid.push(x);
        }
    }
    grid
}

/// Least-squares slope of log|f_1| against log x, skipping zero residuals.
pub fn log_log_slope(points: &[GridPoint]) -> Option<f64> {
    let pts: Vec<(f64, f64)> =
        points.iter().filter(|p| p.f1 != 0.0).map(|p| (p.x.ln(), p.f1.abs().ln())).collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

pub fn fit_envelope(table: &CoefficientTable, field: &NumberField, alpha: Option<f64>) -> Result<ErrorFit> {
    if table.limit() < 100 {
        return Err(Error::Parameter(format!("envelope fit needs X >= 100, got {}", table.limit())));
    }
    if let Some(a) = alpha {
        if !(a > 0.0 && a < 1.0) {
            return Err(Error::Parameter(format!("alpha = {a} must lie in (0, 1)")));
        }
    }
    let rho = field.residue()?;
    let grid: Vec<GridPoint> = envelope_grid(table.limit())
        .into_par_iter()
        .map(|x| GridPoint { x, f1: table.prefix_count(x as u64) as f64 - rho * x })
        .collect();
    if grid.iter().all(|p| p.f1 == 0.0) {
        return Err(Error::DegenerateFit);
    }
    let (alpha, fitted_slope) = match alpha {
        Some(a) => (a, None),
        None => {
            let slope = log_log_slope(&grid[grid.len() / 2..]).ok_or(Error::DegenerateFit)?;
            (slope.clamp(ALPHA_RANGE.0, ALPHA_RANGE.1), Some(slope))
        }
    };
    let c_k = grid.iter().map(|p| p.f1.abs() / p.x.powf(alpha)).fold(0.0, f64::max);
    Ok(ErrorFit { alpha, c_k, fitted_slope, grid })
}
