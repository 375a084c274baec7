use std::collections::HashMap;

use dist_core::{GammaParams, GammaSampler, RngStream};
use weight_engine::{Cascade, ParamSet};

use crate::PolymerError;

/// Boundary-weighted log-Gamma polymer: dual paths from `(-1/2, Y)` to
/// `(n - 1/2, -1)` with horizontal and up-right steps, bulk weights
/// `1 / gamma(x, y)` on interior points and boundary factor `prod_{j < -Y} a_j / b_j`.
#[derive(Debug, Clone)]
pub struct EdgeGammaEnv {
    pub n: usize,
    log_gamma: HashMap<(i64, i64), f64>,
    pub log_a: Vec<f64>,
    pub log_b: Vec<f64>,
}

/// Points `(x, y)` carrying bulk weights (shifted by one half in `x`).
fn bulk_points(n: usize) -> impl Iterator<Item = (i64, i64)> {
    let n = n as i64;
    (0..=n - 2).flat_map(move |x| (x - n..=-1).map(move |y| (x, y)))
}

impl EdgeGammaEnv {
    pub fn new(
        n: usize,
        mut gamma: impl FnMut(i64, i64) -> f64,
        a: &[f64],
        b: &[f64],
    ) -> Result<Self, PolymerError> {
        if a.len() != n || b.len() != n {
            return Err(PolymerError::InvalidWeights("need n boundary weights".into()));
        }
        let mut log_gamma = HashMap::new();
        for (x, y) in bulk_points(n) {
            let g = gamma(x, y);
            if !(g > 0.0 && g.is_finite()) {
                return Err(PolymerError::InvalidWeights(format!("gamma({x}, {y}) = {g}")));
            }
            log_gamma.insert((x, y), g.ln());
        }
        Ok(Self {
            n,
            log_gamma,
            log_a: a.iter().map(|v| v.ln()).collect(),
            log_b: b.iter().map(|v| v.ln()).collect(),
        })
    }

    /// Independent weights `gamma ~ Gamma(psi_{-y} + phi_{x-y-n})`,
    /// `a_j ~ Gamma(psi_j + theta_1)`, `b_j ~ Gamma(phi_{j-n} - theta_1)`.
    pub fn sample(params: &ParamSet, n: usize, rng: &mut RngStream) -> Result<Self, PolymerError> {
        let ni = n as i64;
        let mut shapes = HashMap::new();
        for (x, y) in bulk_points(n) {
            shapes.insert((x, y), params.psi(-y)? + params.phi(x - y - ni)?);
        }
        let draw = |shape: f64, rng: &mut RngStream| -> Result<f64, PolymerError> {
            Ok(GammaSampler::new(GammaParams::unit(shape)?).sample(rng))
        };
        let mut gamma = HashMap::new();
        for (x, y) in bulk_points(n) {
            gamma.insert((x, y), draw(shapes[&(x, y)], rng)?);
        }
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for j in 1..=ni {
            a.push(draw(params.a_shape(1, j)?, rng)?);
            b.push(draw(params.b_shape(1, j, ni)?, rng)?);
        }
        Self::new(n, |x, y| gamma[&(x, y)], &a, &b)
    }

    /// Weights read off a shuffle cascade: `gamma(x, y) = a + b` at row 2,
    /// column `-y` of level `n - x`; boundary weights from row 1 of level `n`.
    pub fn from_cascade(c: &Cascade) -> Result<Self, PolymerError> {
        let n = c.n();
        let top = c.top();
        let a: Vec<f64> = (1..=n).map(|j| top.a(1, j)).collect();
        let b: Vec<f64> = (1..=n).map(|j| top.b(1, j)).collect();
        Self::new(
            n,
            |x, y| {
                let f = c.level(n - x as usize);
                f.a(2, (-y) as usize) + f.b(2, (-y) as usize)
            },
            &a,
            &b,
        )
    }

    fn log_bulk(&self, x: i64, y: i64) -> f64 {
        // the right endpoint carries no weight
        if x == self.n as i64 - 1 {
            0.0
        } else {
            -self.log_gamma[&(x, y)]
        }
    }

    fn log_boundary(&self, k: usize) -> f64 {
        (0..k).map(|j| self.log_a[j] - self.log_b[j]).sum()
    }

    /// Law of `k = -Y - 1` for `k = 0..=n`.
    pub fn endpoint_law(&self) -> Vec<f64> {
        let n = self.n as i64;
        // f[x][y]: log weight of continuations from point (x, y) to the end
        let mut f: HashMap<(i64, i64), f64> = HashMap::new();
        f.insert((n - 1, -1), 0.0);
        for x in (0..n - 1).rev() {
            for y in x - n..=-1 {
                let mut terms = Vec::new();
                for ny in [y, y + 1] {
                    if let Some(v) = f.get(&(x + 1, ny)) {
                        terms.push(v + self.log_bulk(x + 1, ny));
                    }
                }
                if !terms.is_empty() {
                    f.insert((x, y), log_sum(&terms));
                }
            }
        }
        let mut logs = Vec::with_capacity(self.n + 1);
        for k in 0..=self.n {
            let y0 = -(k as i64) - 1;
            let mut terms = Vec::new();
            for ny in [y0, y0 + 1] {
                if let Some(v) = f.get(&(0, ny)) {
                    terms.push(v + self.log_bulk(0, ny));
                }
            }
            logs.push(log_sum(&terms) + self.log_boundary(k));
        }
        let lz = log_sum(&logs);
        logs.iter().map(|l| (l - lz).exp()).collect()
    }

    /// Draws `k = -Y - 1` from the quenched law.
    pub fn sample_endpoint(&self, rng: &mut RngStream) -> usize {
        let law = self.endpoint_law();
        let u = rng.uniform();
        let mut acc = 0.0;
        for (k, p) in law.iter().enumerate() {
            acc += p;
            if u < acc {
                return k;
            }
        }
        law.len() - 1
    }

    /// Same law by listing every dual path; for cross-checking the recursion.
    pub fn endpoint_law_enumerated(&self) -> Result<Vec<f64>, PolymerError> {
        if self.n > 8 {
            return Err(PolymerError::TooLarge(format!("n = {} (limit 8)", self.n)));
        }
        let n = self.n as i64;
        let mut logs = vec![Vec::new(); self.n + 1];
        for k in 0..=self.n {
            let ups = k as i64;
            // choose which of the n steps go up
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as i64 != ups {
                    continue;
                }
                let mut y = -ups - 1;
                let mut lw = self.log_boundary(k);
                for x in 0..n {
                    if mask >> x & 1 == 1 {
                        y += 1;
                    }
                    lw += self.log_bulk(x, y);
                }
                logs[k].push(lw);
            }
        }
        let per: Vec<f64> = logs.iter().map(|v| log_sum(v)).collect();
        let lz = log_sum(&per);
        Ok(per.iter().map(|l| (l - lz).exp()).collect())
    }
}

fn log_sum(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}
