use std::collections::BTreeMap;

use dist_core::RngStream;
use rand_distr::{Binomial, Distribution};
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::HarnessError;

/// Kolmogorov distance between the empirical law of `samples` and `cdf`.
pub fn ks_statistic(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(|a, b| a.total_cmp(b));
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = cdf(x);
        d.max(f - i as f64 / n).max((i + 1) as f64 / n - f)
    })
}

/// Asymptotic critical value of the one-sample statistic at level `alpha`.
pub fn ks_critical(n: usize, alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

/// Asymptotic p-value, with the usual small-sample correction of the argument.
pub fn kolmogorov_p(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    if lambda < 0.3 {
        return 1.0;
    }
    let mut s = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k * k) as f64 * lambda * lambda).exp();
        s += if k % 2 == 1 { term } else { -term };
        if term < 1e-16 {
            break;
        }
    }
    (2.0 * s).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsResult {
    pub n: usize,
    pub d: f64,
    pub crit_01: f64,
    pub crit_001: f64,
    pub p_value: f64,
}

pub fn ks_one_sample(samples: &[f64], cdf: impl Fn(f64) -> f64) -> Result<KsResult, HarnessError> {
    let n = samples.len();
    if n == 0 {
        return Err(HarnessError::Empty);
    }
    let d = ks_statistic(samples, cdf);
    Ok(KsResult {
        n,
        d,
        crit_01: ks_critical(n, 0.01),
        crit_001: ks_critical(n, 0.001),
        p_value: kolmogorov_p(d, n),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSquare {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
}

fn chi_p(stat: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    let d = ChiSquared::new(dof as f64).expect("positive dof");
    d.sf(stat)
}

/// Groups cells (in ascending order of `size`) until each group reaches
/// `min_size`; a short final group joins the previous one.
fn pool_cells(size: &[f64], min_size: f64) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..size.len()).collect();
    order.sort_by(|&a, &b| size[a].total_cmp(&size[b]));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    let mut acc = 0.0;
    for i in order {
        cur.push(i);
        acc += size[i];
        if acc >= min_size {
            groups.push(std::mem::take(&mut cur));
            acc = 0.0;
        }
    }
    if !cur.is_empty() {
        match groups.last_mut() {
            Some(g) => g.extend(cur),
            None => groups.push(cur),
        }
    }
    groups
}

/// Pearson goodness of fit of `counts` against `probs`; cells with expected
/// count below 5 are pooled.
pub fn chi_square_gof(counts: &[u64], probs: &[f64]) -> Result<ChiSquare, HarnessError> {
    if counts.len() != probs.len() {
        return Err(HarnessError::Degenerate("counts and probabilities differ in length".into()));
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(HarnessError::Empty);
    }
    let psum: f64 = probs.iter().sum();
    let expected: Vec<f64> = probs.iter().map(|p| p / psum * total as f64).collect();
    let groups = pool_cells(&expected, 5.0);
    let mut stat = 0.0;
    for g in &groups {
        let o: f64 = g.iter().map(|&i| counts[i] as f64).sum();
        let e: f64 = g.iter().map(|&i| expected[i]).sum();
        if e > 0.0 {
            stat += (o - e).powi(2) / e;
        } else if o > 0.0 {
            stat = f64::INFINITY;
        }
    }
    let dof = groups.len().saturating_sub(1);
    Ok(ChiSquare {
        statistic: stat,
        dof,
        p_value: chi_p(stat, dof),
    })
}

/// Two-sample comparison of discrete laws on a shared, ordered support.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSample {
    pub n_a: u64,
    pub n_b: u64,
    pub tv: f64,
    pub chi: ChiSquare,
}

/// Counts of each outcome.
pub fn tally<K: Ord>(xs: impl IntoIterator<Item = K>) -> BTreeMap<K, u64> {
    let mut out = BTreeMap::new();
    for x in xs {
        *out.entry(x).or_insert(0) += 1;
    }
    out
}

fn aligned<K: Ord + Clone>(a: &BTreeMap<K, u64>, b: &BTreeMap<K, u64>) -> (Vec<f64>, Vec<f64>) {
    let keys: std::collections::BTreeSet<&K> = a.keys().chain(b.keys()).collect();
    let ca = keys.iter().map(|k| *a.get(*k).unwrap_or(&0) as f64).collect();
    let cb = keys.iter().map(|k| *b.get(*k).unwrap_or(&0) as f64).collect();
    (ca, cb)
}

fn tv_of(ca: &[f64], cb: &[f64], na: f64, nb: f64) -> f64 {
    0.5 * ca.iter().zip(cb).map(|(x, y)| (x / na - y / nb).abs()).sum::<f64>()
}

/// TV distance of the two empirical laws and a chi-square homogeneity test
/// on the pooled support (cells with fewer than 10 pooled counts merged).
pub fn discrete_two_sample<K: Ord + Clone>(
    a: &BTreeMap<K, u64>,
    b: &BTreeMap<K, u64>,
) -> Result<TwoSample, HarnessError> {
    let n_a: u64 = a.values().sum();
    let n_b: u64 = b.values().sum();
    if n_a == 0 || n_b == 0 {
        return Err(HarnessError::Empty);
    }
    let (ca, cb) = aligned(a, b);
    let (na, nb) = (n_a as f64, n_b as f64);
    let tv = tv_of(&ca, &cb, na, nb);
    let pooled: Vec<f64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
    let groups = pool_cells(&pooled, 10.0);
    let (ra, rb) = ((nb / na).sqrt(), (na / nb).sqrt());
    let mut stat = 0.0;
    for g in &groups {
        let x: f64 = g.iter().map(|&i| ca[i]).sum();
        let y: f64 = g.iter().map(|&i| cb[i]).sum();
        if x + y > 0.0 {
            stat += (ra * x - rb * y).powi(2) / (x + y);
        }
    }
    let dof = groups.len().saturating_sub(1);
    Ok(TwoSample {
        n_a,
        n_b,
        tv,
        chi: ChiSquare {
            statistic: stat,
            dof,
            p_value: chi_p(stat, dof),
        },
    })
}

fn multinomial(rng: &mut RngStream, n: u64, probs: &[f64]) -> Vec<f64> {
    let mut left = n;
    let mut mass = 1.0;
    let mut out = Vec::with_capacity(probs.len());
    for &p in probs {
        if left == 0 || mass <= 0.0 {
            out.push(0.0);
            continue;
        }
        let q = (p / mass).clamp(0.0, 1.0);
        let k = Binomial::new(left, q).expect("probability in [0, 1]").sample(rng);
        out.push(k as f64);
        left -= k;
        mass -= p;
    }
    out
}

/// Upper `level` quantile of the TV distance between two samples of the
/// observed sizes, both drawn from the pooled empirical law.
pub fn bootstrap_tv_quantile<K: Ord + Clone>(
    a: &BTreeMap<K, u64>,
    b: &BTreeMap<K, u64>,
    resamples: usize,
    level: f64,
    rng: &mut RngStream,
) -> Result<f64, HarnessError> {
    let n_a: u64 = a.values().sum();
    let n_b: u64 = b.values().sum();
    if n_a == 0 || n_b == 0 {
        return Err(HarnessError::Empty);
    }
    if resamples == 0 {
        return Err(HarnessError::Degenerate("no resamples".into()));
    }
    let (ca, cb) = aligned(a, b);
    let total = (n_a + n_b) as f64;
    let probs: Vec<f64> = ca.iter().zip(&cb).map(|(x, y)| (x + y) / total).collect();
    let mut tvs: Vec<f64> = (0..resamples)
        .map(|_| {
            let xa = multinomial(rng, n_a, &probs);
            let xb = multinomial(rng, n_b, &probs);
            tv_of(&xa, &xb, n_a as f64, n_b as f64)
        })
        .collect();
    tvs.sort_by(|x, y| x.total_cmp(y));
    let idx = ((level * resamples as f64).ceil() as usize).clamp(1, resamples) - 1;
    Ok(tvs[idx])
}
