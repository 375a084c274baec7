use std::collections::BTreeMap;

use crate::{BipartiteGraph, OracleError};

/// Largest number of vertices per colour accepted by the enumerator.
pub const MAX_SIDE: usize = 32;

/// Exact dimer measure: every perfect matching (as sorted edge indices) with
/// its probability.
#[derive(Debug, Clone)]
pub struct ExactMeasure {
    pub matchings: Vec<(Vec<usize>, f64)>,
    pub log_z: f64,
}

/// A finite law keyed by an ordered outcome.
pub type Law<K> = BTreeMap<K, f64>;

impl ExactMeasure {
    pub fn pushforward<K: Ord>(&self, mut f: impl FnMut(&[usize]) -> K) -> Law<K> {
        let mut law = Law::new();
        for (m, p) in &self.matchings {
            *law.entry(f(m)).or_insert(0.0) += p;
        }
        law
    }

    /// Probability that each edge is present.
    pub fn edge_marginals(&self, n_edges: usize) -> Vec<f64> {
        let mut out = vec![0.0; n_edges];
        for (m, p) in &self.matchings {
            for &e in m {
                out[e] += p;
            }
        }
        out
    }
}

pub fn tv_distance<K: Ord>(a: &Law<K>, b: &Law<K>) -> f64 {
    let mut s = 0.0;
    for (k, pa) in a {
        s += (pa - b.get(k).copied().unwrap_or(0.0)).abs();
    }
    for (k, pb) in b {
        if !a.contains_key(k) {
            s += pb.abs();
        }
    }
    0.5 * s
}

pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    m + xs.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
}

struct Search<'a> {
    adj: Vec<Vec<(usize, usize)>>, // white -> (black, edge)
    g: &'a BipartiteGraph,
    matched_white: Vec<bool>,
    used_black: u64,
    stack: Vec<usize>,
    found: Vec<(Vec<usize>, f64)>,
}

impl Search<'_> {
    fn free_options(&self, w: usize) -> usize {
        self.adj[w]
            .iter()
            .filter(|(b, _)| self.used_black >> b & 1 == 0)
            .count()
    }

    fn run(&mut self, logw: f64) {
        // most constrained white first; a white with no option prunes the branch
        let mut best: Option<(usize, usize)> = None;
        for w in 0..self.adj.len() {
            if self.matched_white[w] {
                continue;
            }
            let c = self.free_options(w);
            if c == 0 {
                return;
            }
            if best.is_none_or(|(_, bc)| c < bc) {
                best = Some((w, c));
            }
        }
        let Some((w, _)) = best else {
            let mut m = self.stack.clone();
            m.sort_unstable();
            self.found.push((m, logw));
            return;
        };
        self.matched_white[w] = true;
        for idx in 0..self.adj[w].len() {
            let (b, e) = self.adj[w][idx];
            if self.used_black >> b & 1 == 1 {
                continue;
            }
            self.used_black |= 1 << b;
            self.stack.push(e);
            self.run(logw + self.g.edges[e].weight.ln());
            self.stack.pop();
            self.used_black &= !(1 << b);
        }
        self.matched_white[w] = false;
    }
}

/// All perfect matchings of `g` with their exact probabilities.
pub fn enumerate_matchings(g: &BipartiteGraph) -> Result<ExactMeasure, OracleError> {
    if g.n_white != g.n_black {
        return Err(OracleError::Unbalanced(g.n_white, g.n_black));
    }
    if g.n_white > MAX_SIDE {
        return Err(OracleError::TooLarge(g.n_white, MAX_SIDE));
    }
    let mut adj = vec![Vec::new(); g.n_white];
    for (e, ed) in g.edges.iter().enumerate() {
        adj[ed.white].push((ed.black, e));
    }
    let mut s = Search {
        adj,
        g,
        matched_white: vec![false; g.n_white],
        used_black: 0,
        stack: Vec::new(),
        found: Vec::new(),
    };
    s.run(0.0);
    if s.found.is_empty() {
        return Err(OracleError::NoPerfectMatching);
    }
    let logs: Vec<f64> = s.found.iter().map(|x| x.1).collect();
    let log_z = log_sum_exp(&logs);
    let mut matchings: Vec<(Vec<usize>, f64)> = s
        .found
        .into_iter()
        .map(|(m, lw)| (m, (lw - log_z).exp()))
        .collect();
    matchings.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(ExactMeasure { matchings, log_z })
}
