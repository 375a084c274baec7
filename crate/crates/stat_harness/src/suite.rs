use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact_checks::{self as exact, SliceKind};
use crate::mc_checks::{self as mc, Boundary};
use crate::{HarnessError, TestReport};

/// Claims understood by [`match_suite`].
pub const MATCH_TESTS: [&str; 6] = [
    "vertical-slice",
    "horizontal-slice",
    "dynamic-slice",
    "east-turning",
    "west-turning",
    "south-turning",
];

/// Suite selection: test ids, per-test sizes, replica count and master seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub tests: Vec<String>,
    #[serde(default)]
    pub sizes: BTreeMap<String, usize>,
    #[serde(default = "default_replicas")]
    pub replicas: usize,
    #[serde(default)]
    pub seed: u64,
}

fn default_replicas() -> usize {
    100_000
}

impl SuiteConfig {
    pub fn all(replicas: usize, seed: u64) -> Self {
        Self {
            tests: MATCH_TESTS.iter().map(|s| s.to_string()).collect(),
            sizes: BTreeMap::new(),
            replicas,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.tests.is_empty() {
            return Err(HarnessError::Config("no tests selected".into()));
        }
        for t in self.tests.iter().chain(self.sizes.keys()) {
            if !MATCH_TESTS.contains(&t.as_str()) {
                return Err(HarnessError::Config(format!("unknown test `{t}`")));
            }
        }
        if self.replicas == 0 {
            return Err(HarnessError::Config("replicas must be positive".into()));
        }
        for (t, &n) in &self.sizes {
            let ok = match t.as_str() {
                "vertical-slice" | "horizontal-slice" => (1..=4).contains(&n),
                "dynamic-slice" => (1..=3).contains(&n),
                _ => (1..=200).contains(&n),
            };
            if !ok {
                return Err(HarnessError::Config(format!("size {n} out of range for `{t}`")));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self, HarnessError> {
        let c: Self = serde_json::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    fn size(&self, test: &str, default: usize) -> usize {
        self.sizes.get(test).copied().unwrap_or(default)
    }
}

const QUENCHED_ENVS: usize = 5;
const ANNEALED_TV: f64 = 0.03;

fn run_one(test: &str, cfg: &SuiteConfig, seed: u64) -> Result<Vec<TestReport>, HarnessError> {
    let reps = cfg.replicas;
    match test {
        "vertical-slice" | "horizontal-slice" => {
            let kind = if test == "vertical-slice" { SliceKind::Vertical } else { SliceKind::Horizontal };
            let n = cfg.size(test, 3);
            (1..=n).map(|ell| exact::slice_matching(kind, n, ell, QUENCHED_ENVS, seed)).collect()
        }
        "dynamic-slice" => {
            let horizon = cfg.size(test, 3);
            (1..=2).map(|k| exact::dynamic_slice(k, horizon, QUENCHED_ENVS, seed)).collect()
        }
        "east-turning" => Ok(vec![mc::turning_point_match(Boundary::East, cfg.size(test, 6), 0.8, 0.8, reps, ANNEALED_TV, seed)?]),
        "west-turning" => Ok(vec![mc::turning_point_match(Boundary::West, cfg.size(test, 10), 0.8, 0.8, reps, ANNEALED_TV, seed)?]),
        "south-turning" => Ok(vec![mc::turning_point_match(Boundary::South, cfg.size(test, 10), 0.8, 0.8, reps, ANNEALED_TV, seed)?]),
        other => Err(HarnessError::Config(format!("unknown test `{other}`"))),
    }
}

/// One report per selected claim and size, in configuration order. Each
/// claim draws from its own seed, derived from the master seed and its id.
pub fn match_suite(cfg: &SuiteConfig) -> Result<Vec<TestReport>, HarnessError> {
    cfg.validate()?;
    let out: Result<Vec<Vec<TestReport>>, HarnessError> = cfg
        .tests
        .par_iter()
        .map(|t| {
            let idx = MATCH_TESTS.iter().position(|m| m == t).expect("validated") as u64;
            run_one(t, cfg, cfg.seed.wrapping_mul(1000).wrapping_add(idx))
        })
        .collect();
    Ok(out?.into_iter().flatten().collect())
}

/// Named suites for the command line.
pub const SUITES: [&str; 8] = [
    "oracle",
    "matchings",
    "shuffle",
    "burke",
    "gamma",
    "free-energy",
    "scaling",
    "fock",
];

/// Runs a named suite; `replicas` overrides the Monte Carlo sample size.
pub fn run_suite(name: &str, replicas: Option<usize>, seed: u64) -> Result<Vec<TestReport>, HarnessError> {
    let reps = |default: usize| replicas.unwrap_or(default);
    match name {
        "oracle" => Ok(vec![
            exact::factorization(&[1, 2, 3, 4, 5], 50, seed)?,
            exact::z_recurrence(5, 20, seed)?,
            exact::spider_identity(10, seed)?,
            exact::expansion_identity(10, seed)?,
            exact::column_swap_identity(4, seed)?,
            exact::frozen_edges(3, seed)?,
        ]),
        "matchings" => match_suite(&SuiteConfig::all(reps(100_000), seed)),
        "shuffle" => [2, 3]
            .iter()
            .map(|&n| mc::shuffle_law(n, 5, reps(100_000), 0.02, seed))
            .collect(),
        "burke" => Ok(vec![mc::burke(reps(100_000), seed)?]),
        "gamma" => Ok(vec![
            mc::gamma_preservation(reps(100_000), seed)?,
            mc::lognormal_control(reps(100_000), seed)?,
        ]),
        "free-energy" => Ok(vec![mc::free_energy(20, &[0.01, 1.0, 100.0], 0.5, 0.5, reps(10_000), seed)?]),
        "scaling" => Ok(vec![mc::scaling(&[64, 128, 256, 512], reps(2_500), seed)?]),
        "fock" => Ok(vec![exact::fock_limit(10, 5, seed)?]),
        other => Err(HarnessError::Config(format!("unknown suite `{other}`"))),
    }
}
