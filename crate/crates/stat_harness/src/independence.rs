use dist_core::RngStream;

use crate::HarnessError;

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Independence {
    pub n: usize,
    pub r_raw: f64,
    /// Only when every value is positive.
    pub r_log: Option<f64>,
    /// Two-sided permutation p-value of the raw correlation.
    pub perm_p: f64,
}

/// Correlation-based independence probe on paired samples.
pub fn independence_suite(
    xs: &[f64],
    ys: &[f64],
    permutations: usize,
    rng: &mut RngStream,
) -> Result<Independence, HarnessError> {
    if xs.len() != ys.len() {
        return Err(HarnessError::Degenerate("unpaired samples".into()));
    }
    if xs.len() < 3 {
        return Err(HarnessError::Empty);
    }
    let r_raw = pearson(xs, ys);
    let positive = xs.iter().chain(ys).all(|&v| v > 0.0);
    let r_log = positive.then(|| {
        let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
        let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
        pearson(&lx, &ly)
    });
    let mut shuffled = ys.to_vec();
    let mut hits = 0usize;
    for _ in 0..permutations {
        for i in (1..shuffled.len()).rev() {
            let j = (rng.uniform() * (i + 1) as f64) as usize;
            shuffled.swap(i, j.min(i));
        }
        if pearson(xs, &shuffled).abs() >= r_raw.abs() {
            hits += 1;
        }
    }
    Ok(Independence {
        n: xs.len(),
        r_raw,
        r_log,
        perm_p: (hits + 1) as f64 / (permutations + 1) as f64,
    })
}
