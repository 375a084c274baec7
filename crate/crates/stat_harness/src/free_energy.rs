use dist_core::{polygamma, RngStream};
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use weight_engine::{log_partition_of_field, sample_log_weight_field, ParamSet};

use crate::gof::{ks_critical, ks_statistic};
use crate::HarnessError;

/// Closed-form and Monte Carlo free-energy summary at size `n` and
/// temperature `t` (shapes are `t` times the base parameters).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergyReport {
    pub n: usize,
    pub t: f64,
    /// Number of factors `(j, k)`, `1 <= j <= k <= n`.
    pub factors: usize,
    /// Mean of the base shape sums over all factors.
    pub mean_shape: f64,
    /// `t log E Z`.
    pub annealed: f64,
    /// `E[t log Z]`.
    pub quenched_mean: f64,
    /// Variance of `t log Z` as a sum of trigamma terms.
    pub variance: f64,
    /// Four times `variance`: the alternative normalisation.
    pub variance_alt: f64,
    /// `(annealed - quenched_mean) / n^2`.
    pub gap: f64,
    /// Lower and upper bounds on `gap` from the shape sums alone.
    pub gap_bounds: (f64, f64),
    pub empirical: Option<FreeEnergySample>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeEnergySample {
    pub replicas: usize,
    pub mean: f64,
    pub variance: f64,
    pub std_error: f64,
    /// KS distance of `(F - E F) / sqrt(variance)` from the standard normal.
    pub ks: f64,
    /// Same with `variance_alt`.
    pub ks_alt: f64,
    pub ks_crit_001: f64,
    pub seed: u64,
}

impl FreeEnergyReport {
    /// Mean within `k` standard errors of the formula.
    pub fn mean_ok(&self, k: f64) -> bool {
        self.empirical
            .as_ref()
            .is_some_and(|e| (e.mean - self.quenched_mean).abs() < k * e.std_error)
    }

    /// Relative variance error.
    pub fn variance_error(&self) -> Option<f64> {
        self.empirical
            .as_ref()
            .map(|e| (e.variance - self.variance).abs() / self.variance)
    }

    pub fn sandwich_holds(&self) -> bool {
        self.gap_bounds.0 < self.gap && self.gap < self.gap_bounds.1
    }

    pub const CSV_HEADER: &'static str = "n,T,factors,annealed,quenched_mean,variance,variance_alt,gap,gap_lo,gap_hi,replicas,emp_mean,emp_var,std_error,ks,ks_alt,ks_crit_001";

    pub fn csv_row(&self) -> String {
        let e = self.empirical.as_ref();
        let opt = |f: fn(&FreeEnergySample) -> f64| e.map(|s| f(s).to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.t,
            self.factors,
            self.annealed,
            self.quenched_mean,
            self.variance,
            self.variance_alt,
            self.gap,
            self.gap_bounds.0,
            self.gap_bounds.1,
            e.map(|s| s.replicas.to_string()).unwrap_or_default(),
            opt(|s| s.mean),
            opt(|s| s.variance),
            opt(|s| s.std_error),
            opt(|s| s.ks),
            opt(|s| s.ks_alt),
            opt(|s| s.ks_crit_001),
        )
    }
}

/// Base shape sums `psi_j + phi_{j-k}` over `1 <= j <= k <= n`.
fn shape_sums(params: &ParamSet, n: usize) -> Result<Vec<f64>, HarnessError> {
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for k in 1..=n as i64 {
        for j in 1..=k {
            let s = params.psi(j)? + params.phi(j - k)?;
            if s <= 0.0 {
                return Err(HarnessError::Degenerate(format!("shape sum {s} at ({j}, {k})")));
            }
            out.push(s);
        }
    }
    Ok(out)
}

/// Formula side only; no randomness.
pub fn free_energy_formulas(params: &ParamSet, n: usize, t: f64) -> Result<FreeEnergyReport, HarnessError> {
    if n == 0 || !(t > 0.0 && t.is_finite()) {
        return Err(HarnessError::Degenerate(format!("n = {n}, T = {t}")));
    }
    let sums = shape_sums(params, n)?;
    let (mut annealed, mut mean, mut var, mut inv) = (0.0, 0.0, 0.0, 0.0);
    for &s in &sums {
        let x = t * s;
        annealed += t * x.ln();
        mean += t * polygamma(0, x)?;
        var += t * t * polygamma(1, x)?;
        inv += 1.0 / s;
    }
    let n2 = (n * n) as f64;
    Ok(FreeEnergyReport {
        n,
        t,
        factors: sums.len(),
        mean_shape: sums.iter().sum::<f64>() / sums.len() as f64,
        annealed,
        quenched_mean: mean,
        variance: var,
        variance_alt: 4.0 * var,
        gap: (annealed - mean) / n2,
        gap_bounds: (inv / (2.0 * n2), inv / n2),
        empirical: None,
    })
}

/// Formula side plus `replicas` independent samples of `t log Z_n`, each from
/// a fresh field reduced by the log-domain cascade.
pub fn free_energy_mc(
    params: &ParamSet,
    n: usize,
    t: f64,
    replicas: usize,
    seed: u64,
) -> Result<FreeEnergyReport, HarnessError> {
    if replicas < 2 {
        return Err(HarnessError::Degenerate("need at least two replicas".into()));
    }
    let mut report = free_energy_formulas(params, n, t)?;
    let scaled = params.scaled(t);
    let mut rng = RngStream::new(seed, 0);
    let mut f = Vec::with_capacity(replicas);
    for _ in 0..replicas {
        let field = sample_log_weight_field(&scaled, n, &mut rng)?;
        f.push(t * log_partition_of_field(&field));
    }
    let r = replicas as f64;
    let mean = f.iter().sum::<f64>() / r;
    let variance = f.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (r - 1.0);
    let std_normal = Normal::new(0.0, 1.0).expect("unit normal");
    let standardize = |v: f64| -> Vec<f64> {
        let sd = v.sqrt();
        f.iter().map(|x| (x - report.quenched_mean) / sd).collect()
    };
    let ks = ks_statistic(&standardize(report.variance), |z| std_normal.cdf(z));
    let ks_alt = ks_statistic(&standardize(report.variance_alt), |z| std_normal.cdf(z));
    report.empirical = Some(FreeEnergySample {
        replicas,
        mean,
        variance,
        std_error: (variance / r).sqrt(),
        ks,
        ks_alt,
        ks_crit_001: ks_critical(replicas, 1e-3),
        seed,
    });
    Ok(report)
}
