use dist_core::{sample_log_beta, BetaParams, GammaSampler, RngStream};

use crate::lattice::{LatticePath, Move};
use crate::PolymerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatModel {
    /// Inverse-Gamma weights on lattice points.
    LogGamma,
    /// Gamma weights on horizontal edges, inverse-Beta weights on the
    /// vertical edges of the axis `x = 0`.
    StrictWeak,
}

/// Environment on `[0, m] x [0, n]` with its partition-function table.
#[derive(Debug, Clone)]
pub struct StatPolymerEnv {
    pub model: StatModel,
    pub m: usize,
    pub n: usize,
    /// Point weights (log-Gamma) or weights of the edge `(i, j) -> (i + 1, j)`
    /// (strict-weak), in log space.
    log_w: Vec<f64>,
    /// Strict-weak only: weights of `(0, j) -> (0, j + 1)`.
    log_r: Vec<f64>,
    log_z: Vec<f64>,
}

fn logaddexp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

impl StatPolymerEnv {
    fn idx(&self, i: usize, j: usize) -> usize {
        i * (self.n + 1) + j
    }

    /// Log-Gamma environment from explicit log point weights, indexed `i * (n + 1) + j`.
    pub fn log_gamma_from_weights(m: usize, n: usize, log_y: Vec<f64>) -> Result<Self, PolymerError> {
        if log_y.len() != (m + 1) * (n + 1) {
            return Err(PolymerError::InvalidWeights("point table has wrong size".into()));
        }
        let mut env = Self {
            model: StatModel::LogGamma,
            m,
            n,
            log_w: log_y,
            log_r: Vec::new(),
            log_z: vec![0.0; (m + 1) * (n + 1)],
        };
        env.fill();
        Ok(env)
    }

    /// Strict-weak environment from explicit log horizontal weights (indexed
    /// like the point table; column `m` unused) and log axis weights `R_0..R_{n-1}`.
    pub fn strict_weak_from_weights(
        m: usize,
        n: usize,
        log_h: Vec<f64>,
        log_r: Vec<f64>,
    ) -> Result<Self, PolymerError> {
        if log_h.len() != (m + 1) * (n + 1) || log_r.len() != n {
            return Err(PolymerError::InvalidWeights("weight tables have wrong size".into()));
        }
        let mut env = Self {
            model: StatModel::StrictWeak,
            m,
            n,
            log_w: log_h,
            log_r,
            log_z: vec![0.0; (m + 1) * (n + 1)],
        };
        env.fill();
        Ok(env)
    }

    fn fill(&mut self) {
        let (m, n) = (self.m, self.n);
        for i in 0..=m {
            for j in 0..=n {
                let k = self.idx(i, j);
                let z = match self.model {
                    StatModel::LogGamma => {
                        let prev = match (i, j) {
                            (0, 0) => 0.0,
                            (0, _) => self.log_z[k - 1],
                            (_, 0) => self.log_z[k - (n + 1)],
                            _ => logaddexp(self.log_z[k - (n + 1)], self.log_z[k - 1]),
                        };
                        self.log_w[k] + prev
                    }
                    StatModel::StrictWeak => {
                        let from_left = (i > 0).then(|| self.log_z[k - (n + 1)] + self.log_w[k - (n + 1)]);
                        let from_below = (j > 0).then(|| {
                            let v = if i == 0 { self.log_r[j - 1] } else { 0.0 };
                            self.log_z[k - 1] + v
                        });
                        match (from_left, from_below) {
                            (None, None) => 0.0,
                            (Some(a), None) | (None, Some(a)) => a,
                            (Some(a), Some(b)) => logaddexp(a, b),
                        }
                    }
                };
                self.log_z[k] = z;
            }
        }
    }

    pub fn log_z(&self, i: usize, j: usize) -> f64 {
        self.log_z[self.idx(i, j)]
    }

    pub fn log_weight(&self, i: usize, j: usize) -> f64 {
        self.log_w[self.idx(i, j)]
    }

    pub fn log_axis_weight(&self, j: usize) -> f64 {
        self.log_r[j]
    }

    /// `log Z(i, j) - log Z(i - 1, j)`.
    pub fn log_u(&self, i: usize, j: usize) -> f64 {
        self.log_z(i, j) - self.log_z(i - 1, j)
    }

    /// `log Z(i, j) - log Z(i, j - 1)`.
    pub fn log_v(&self, i: usize, j: usize) -> f64 {
        self.log_z(i, j) - self.log_z(i, j - 1)
    }

    /// Log probability that the last step into `(i, j)` is horizontal.
    fn log_odds_right(&self, i: usize, j: usize) -> (f64, f64) {
        let left = self.log_z(i - 1, j)
            + match self.model {
                StatModel::LogGamma => 0.0,
                StatModel::StrictWeak => self.log_weight(i - 1, j),
            };
        (left, self.log_z(i, j - 1))
    }

    /// Path to `(i, j)` from the quenched polymer measure, sampled backwards.
    pub fn sample_path_backward(&self, i: usize, j: usize, rng: &mut RngStream) -> LatticePath {
        let (mut a, mut b) = (i, j);
        let mut rev = Vec::with_capacity(i + j);
        while a > 0 || b > 0 {
            let right = if a == 0 {
                false
            } else if b == 0 {
                true
            } else {
                let (l, d) = self.log_odds_right(a, b);
                let p = 1.0 / (1.0 + (d - l).exp());
                rng.uniform() < p
            };
            if right {
                rev.push(Move::Right);
                a -= 1;
            } else {
                rev.push(Move::Up);
                b -= 1;
            }
        }
        rev.reverse();
        LatticePath { moves: rev }
    }

    pub fn path_log_weight(&self, path: &LatticePath) -> f64 {
        let pts = path.points();
        match self.model {
            StatModel::LogGamma => pts.iter().map(|&(x, y)| self.log_weight(x as usize, y as usize)).sum(),
            StatModel::StrictWeak => pts
                .windows(2)
                .map(|w| {
                    let (x, y) = (w[0].0 as usize, w[0].1 as usize);
                    if w[1].0 > w[0].0 {
                        self.log_weight(x, y)
                    } else if x == 0 {
                        self.log_r[y]
                    } else {
                        0.0
                    }
                })
                .sum(),
        }
    }

    /// Quenched law of paths to `(i, j)` by enumeration.
    pub fn exact_path_law(&self, i: usize, j: usize) -> Result<Vec<(LatticePath, f64)>, PolymerError> {
        if i + j > 16 {
            return Err(PolymerError::TooLarge(format!("{i} + {j} steps")));
        }
        let lz = self.log_z(i, j);
        Ok(LatticePath::all(i, j)
            .into_iter()
            .map(|p| {
                let w = (self.path_log_weight(&p) - lz).exp();
                (p, w)
            })
            .collect())
    }
}

/// Stationary log-Gamma environment on `[0, m] x [0, n]`.
pub fn stat_loggamma(m: usize, n: usize, alpha: f64, beta: f64, rng: &mut RngStream) -> Result<StatPolymerEnv, PolymerError> {
    let row = GammaSampler::new(dist_core::GammaParams::unit(beta)?);
    let col = GammaSampler::new(dist_core::GammaParams::unit(alpha)?);
    let bulk = GammaSampler::new(dist_core::GammaParams::unit(alpha + beta)?);
    let mut log_y = vec![0.0; (m + 1) * (n + 1)];
    for i in 0..=m {
        for j in 0..=n {
            log_y[i * (n + 1) + j] = match (i, j) {
                (0, 0) => 0.0,
                (_, 0) => -row.sample_log(rng),
                (0, _) => -col.sample_log(rng),
                _ => -bulk.sample_log(rng),
            };
        }
    }
    StatPolymerEnv::log_gamma_from_weights(m, n, log_y)
}

/// Stationary strict-weak environment on `[0, m] x [0, n]`.
pub fn stat_strictweak(m: usize, n: usize, alpha: f64, beta: f64, rng: &mut RngStream) -> Result<StatPolymerEnv, PolymerError> {
    let bottom = GammaSampler::new(dist_core::GammaParams::unit(alpha + beta)?);
    let bulk = GammaSampler::new(dist_core::GammaParams::unit(alpha)?);
    let bp = BetaParams::new(beta, alpha)?;
    let mut log_h = vec![0.0; (m + 1) * (n + 1)];
    for i in 0..m {
        for j in 0..=n {
            log_h[i * (n + 1) + j] = if j == 0 {
                bottom.sample_log(rng)
            } else {
                bulk.sample_log(rng)
            };
        }
    }
    let log_r = (0..n).map(|_| -sample_log_beta(rng, bp)).collect();
    StatPolymerEnv::strict_weak_from_weights(m, n, log_h, log_r)
}
