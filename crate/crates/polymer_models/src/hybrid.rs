use std::collections::{BTreeMap, HashMap};

use crate::path::{in_support, steps_from, PathTuple, Step};
use crate::PolymerError;

/// Largest `p` and `m` accepted by the exact enumerator.
pub const MAX_ENUM: usize = 4;

/// Edge weights of the hybrid digraph, stored per vertex as
/// `[right step, other step]` (down-right on the left half, down on the right).
#[derive(Debug, Clone)]
pub struct HybridWeights {
    pub p: usize,
    pub m: usize,
    weights: HashMap<(i64, i64), [f64; 2]>,
}

fn support(p: usize, m: usize) -> impl Iterator<Item = (i64, i64)> {
    let (pi, mi) = (p as i64, m as i64);
    (-mi..pi).flat_map(move |x| (-mi - pi..=-1).map(move |y| (x, y)))
        .filter(move |&v| in_support(p, m, v))
}

impl HybridWeights {
    pub fn from_fn(
        p: usize,
        m: usize,
        mut f: impl FnMut((i64, i64)) -> [f64; 2],
    ) -> Result<Self, PolymerError> {
        let mut weights = HashMap::new();
        for v in support(p, m) {
            let w = f(v);
            for s in steps_from(p, m, v) {
                let val = if s == Step::Right { w[0] } else { w[1] };
                if !(val > 0.0 && val.is_finite()) {
                    return Err(PolymerError::InvalidWeights(format!("{s:?} at {v:?}: {val}")));
                }
            }
            weights.insert(v, w);
        }
        Ok(Self { p, m, weights })
    }

    /// Beta-Gamma weights: `beta` on left-half right steps (`1 - beta` on the
    /// diagonal), `gamma` on right-half right steps (1 on down steps).
    pub fn beta_gamma(
        p: usize,
        m: usize,
        mut beta: impl FnMut(i64, i64) -> f64,
        mut gamma: impl FnMut(i64, i64) -> f64,
    ) -> Result<Self, PolymerError> {
        Self::from_fn(p, m, |(x, y)| {
            if x < 0 {
                let b = beta(x, y);
                [b, 1.0 - b]
            } else {
                [gamma(x, y), 1.0]
            }
        })
    }

    /// Gamma / log-Gamma weights: `rho` on left-half right steps (1 on the
    /// diagonal), `kappa` on both steps out of a right-half vertex.
    pub fn gamma_loggamma(
        p: usize,
        m: usize,
        mut rho: impl FnMut(i64, i64) -> f64,
        mut kappa: impl FnMut(i64, i64) -> f64,
    ) -> Result<Self, PolymerError> {
        Self::from_fn(p, m, |(x, y)| {
            if x < 0 {
                [rho(x, y), 1.0]
            } else {
                let k = kappa(x, y);
                [k, k]
            }
        })
    }

    pub fn step_weight(&self, v: (i64, i64), s: Step) -> f64 {
        let w = self.weights[&v];
        if s == Step::Right {
            w[0]
        } else {
            w[1]
        }
    }

    pub fn log_weight(&self, t: &PathTuple) -> f64 {
        let mut lw = 0.0;
        for j in 1..=t.p {
            let mut v = t.start(j);
            for &s in &t.paths[j - 1] {
                lw += self.step_weight(v, s).ln();
                v = s.apply(v);
            }
        }
        lw
    }
}

/// All single paths from `from` to `to`.
fn single_paths(p: usize, m: usize, from: (i64, i64), to: (i64, i64)) -> Vec<Vec<Step>> {
    fn go(p: usize, m: usize, v: (i64, i64), to: (i64, i64), cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if v == to {
            out.push(cur.clone());
            return;
        }
        if v.0 > to.0 || v.1 < to.1 {
            return;
        }
        for s in steps_from(p, m, v) {
            cur.push(s);
            go(p, m, s.apply(v), to, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(p, m, from, to, &mut Vec::new(), &mut out);
    out
}

/// Every admissible tuple of nonintersecting paths.
pub fn enumerate_path_tuples(p: usize, m: usize) -> Result<Vec<PathTuple>, PolymerError> {
    if p == 0 || m == 0 || p > MAX_ENUM || m > MAX_ENUM {
        return Err(PolymerError::TooLarge(format!("p = {p}, m = {m}, limit {MAX_ENUM}")));
    }
    let bit = |(x, y): (i64, i64)| 1u64 << ((x + m as i64) * (m + p) as i64 + (-y - 1));
    let shell = PathTuple { p, m, paths: vec![] };
    let options: Vec<Vec<(Vec<Step>, u64)>> = (1..=p)
        .map(|j| {
            single_paths(p, m, shell.start(j), shell.end(j))
                .into_iter()
                .map(|steps| {
                    let mut v = shell.start(j);
                    let mut mask = bit(v);
                    for s in &steps {
                        v = s.apply(v);
                        mask |= bit(v);
                    }
                    (steps, mask)
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    fn go(
        j: usize,
        used: u64,
        options: &[Vec<(Vec<Step>, u64)>],
        cur: &mut Vec<Vec<Step>>,
        out: &mut Vec<Vec<Vec<Step>>>,
    ) {
        if j == options.len() {
            out.push(cur.clone());
            return;
        }
        for (steps, mask) in &options[j] {
            if used & mask == 0 {
                cur.push(steps.clone());
                go(j + 1, used | mask, options, cur, out);
                cur.pop();
            }
        }
    }
    let mut raw = Vec::new();
    go(0, 0, &options, &mut Vec::new(), &mut raw);
    for paths in raw {
        out.push(PathTuple { p, m, paths });
    }
    Ok(out)
}

/// Exact quenched polymer measure.
#[derive(Debug, Clone)]
pub struct PolymerMeasure {
    pub tuples: Vec<(PathTuple, f64)>,
    pub log_z: f64,
}

impl PolymerMeasure {
    pub fn pushforward<K: Ord>(&self, mut f: impl FnMut(&PathTuple) -> K) -> BTreeMap<K, f64> {
        let mut law = BTreeMap::new();
        for (t, pr) in &self.tuples {
            *law.entry(f(t)).or_insert(0.0) += pr;
        }
        law
    }
}

pub fn hybrid_polymer_exact(w: &HybridWeights) -> Result<PolymerMeasure, PolymerError> {
    let tuples = enumerate_path_tuples(w.p, w.m)?;
    let logs: Vec<f64> = tuples.iter().map(|t| w.log_weight(t)).collect();
    let mx = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let log_z = mx + logs.iter().map(|l| (l - mx).exp()).sum::<f64>().ln();
    Ok(PolymerMeasure {
        tuples: tuples
            .into_iter()
            .zip(logs)
            .map(|(t, l)| (t, (l - log_z).exp()))
            .collect(),
        log_z,
    })
}

/// Exact Beta-Gamma polymer measure for explicit weights.
pub fn bg_polymer_exact(
    p: usize,
    m: usize,
    beta: impl FnMut(i64, i64) -> f64,
    gamma: impl FnMut(i64, i64) -> f64,
) -> Result<PolymerMeasure, PolymerError> {
    hybrid_polymer_exact(&HybridWeights::beta_gamma(p, m, beta, gamma)?)
}

/// Exact Gamma / log-Gamma polymer measure for explicit weights.
pub fn glg_polymer_exact(
    p: usize,
    m: usize,
    rho: impl FnMut(i64, i64) -> f64,
    kappa: impl FnMut(i64, i64) -> f64,
) -> Result<PolymerMeasure, PolymerError> {
    hybrid_polymer_exact(&HybridWeights::gamma_loggamma(p, m, rho, kappa)?)
}
