use std::collections::BTreeMap;

use dist_core::RngStream;

use crate::{stat_loggamma, PolymerError};

/// Empirical laws of the two path pieces compared by the restriction check.
#[derive(Debug, Clone)]
pub struct RestrictionComparison {
    pub big: BTreeMap<Vec<(i64, i64)>, f64>,
    pub small: BTreeMap<Vec<(i64, i64)>, f64>,
    pub tv: f64,
    pub samples: usize,
}

fn piece(points: &[(i64, i64)], x0: i64, y0: i64, m: i64, n: i64) -> Vec<(i64, i64)> {
    points
        .iter()
        .filter(|&&(x, y)| x > x0 && x <= x0 + m && y > y0 && y <= y0 + n)
        .map(|&(x, y)| (x - x0, y - y0))
        .collect()
}

fn normalise(counts: BTreeMap<Vec<(i64, i64)>, usize>, total: usize) -> BTreeMap<Vec<(i64, i64)>, f64> {
    counts.into_iter().map(|(k, c)| (k, c as f64 / total as f64)).collect()
}

/// Compares the top-right `m x n` piece of stationary log-Gamma paths in an
/// `M x N` box against the interior of paths in an independent `m x n` box.
/// One fresh environment per sample on each side.
pub fn stationarity_restriction_check(
    big: (usize, usize),
    small: (usize, usize),
    samples: usize,
    alpha: f64,
    beta: f64,
    rng: &mut RngStream,
) -> Result<RestrictionComparison, PolymerError> {
    let (bm, bn) = big;
    let (sm, sn) = small;
    if sm == 0 || sn == 0 || sm > bm || sn > bn {
        return Err(PolymerError::Range(format!("box {small:?} inside {big:?}")));
    }
    let (x0, y0) = ((bm - sm) as i64, (bn - sn) as i64);
    let mut big_counts = BTreeMap::new();
    let mut small_counts = BTreeMap::new();
    for _ in 0..samples {
        let env = stat_loggamma(bm, bn, alpha, beta, rng)?;
        let path = env.sample_path_backward(bm, bn, rng);
        *big_counts.entry(piece(&path.points(), x0, y0, sm as i64, sn as i64)).or_insert(0) += 1;

        let env = stat_loggamma(sm, sn, alpha, beta, rng)?;
        let path = env.sample_path_backward(sm, sn, rng);
        *small_counts.entry(piece(&path.points(), 0, 0, sm as i64, sn as i64)).or_insert(0) += 1;
    }
    let big = normalise(big_counts, samples);
    let small = normalise(small_counts, samples);
    let mut tv = 0.0;
    for (k, p) in &big {
        tv += (p - small.get(k).copied().unwrap_or(0.0)).abs();
    }
    for (k, q) in &small {
        if !big.contains_key(k) {
            tv += q;
        }
    }
    Ok(RestrictionComparison { big, small, tv: tv / 2.0, samples })
}
