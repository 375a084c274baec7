use dist_core::RngStream;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

/// Least-squares line through `(ln n, ln spread)`.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<(f64, f64), HarnessError> {
    if points.len() < 2 {
        return Err(HarnessError::Degenerate("need at least two points".into()));
    }
    if points.iter().any(|&(n, s)| !(n > 0.0 && s > 0.0)) {
        return Err(HarnessError::Degenerate("sizes and spreads must be positive".into()));
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(HarnessError::Degenerate("all sizes equal".into()));
    }
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    Ok((slope, my - slope * mx))
}

pub fn std_dev(xs: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    (xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub slope: f64,
    pub intercept: f64,
    /// 95% percentile bootstrap interval for the slope.
    pub ci: (f64, f64),
    pub sizes: Vec<usize>,
    pub spreads: Vec<f64>,
}

/// Slope of log standard deviation against log size, with a bootstrap that
/// resamples within each size.
pub fn scaling_exponent(
    series: &[(usize, Vec<f64>)],
    resamples: usize,
    rng: &mut RngStream,
) -> Result<ScalingFit, HarnessError> {
    if series.len() < 4 {
        return Err(HarnessError::Degenerate("need at least four sizes".into()));
    }
    if series.iter().any(|(_, s)| s.len() < 2) {
        return Err(HarnessError::Degenerate("need two samples per size".into()));
    }
    let spreads: Vec<f64> = series.iter().map(|(_, s)| std_dev(s)).collect();
    let points: Vec<(f64, f64)> = series.iter().zip(&spreads).map(|((n, _), &s)| (*n as f64, s)).collect();
    let (slope, intercept) = fit_power_law(&points)?;
    let mut boot = Vec::with_capacity(resamples);
    let mut buf = Vec::new();
    for _ in 0..resamples {
        let pts: Vec<(f64, f64)> = series
            .iter()
            .map(|(n, s)| {
                buf.clear();
                buf.extend((0..s.len()).map(|_| s[((rng.uniform() * s.len() as f64) as usize).min(s.len() - 1)]));
                (*n as f64, std_dev(&buf).max(f64::MIN_POSITIVE))
            })
            .collect();
        boot.push(fit_power_law(&pts)?.0);
    }
    boot.sort_by(|a, b| a.total_cmp(b));
    let ci = if boot.is_empty() {
        (slope, slope)
    } else {
        let q = |p: f64| boot[((p * (boot.len() - 1) as f64).round() as usize).min(boot.len() - 1)];
        (q(0.025), q(0.975))
    };
    Ok(ScalingFit {
        slope,
        intercept,
        ci,
        sizes: series.iter().map(|(n, _)| *n).collect(),
        spreads,
    })
}
