use aztec_model::{black_position, white_position, Dir, Matching};
use weight_engine::WeightField;

use crate::{enumerate_matchings, BipartiteGraph, OracleError};

/// The Aztec diamond as a generic graph, with each edge's white end and direction.
#[derive(Debug, Clone)]
pub struct AztecGraph {
    pub n: usize,
    pub graph: BipartiteGraph,
    pub edge_dir: Vec<((usize, usize), Dir)>,
}

/// White `w(l,k)` gets id `(l-1)(n+1) + k-1`; black `bk(i,j)` gets `(i-1)n + j-1`.
pub fn aztec_graph(w: &WeightField) -> AztecGraph {
    let n = w.level;
    let mut g = BipartiteGraph::new(n * (n + 1), (n + 1) * n);
    let mut edge_dir = Vec::with_capacity(4 * n * n);
    let mut wp = vec![(0, 0); n * (n + 1)];
    let mut bp = vec![(0, 0); n * (n + 1)];
    for i in 1..=n + 1 {
        for j in 1..=n {
            bp[(i - 1) * n + j - 1] = black_position(n, i, j);
        }
    }
    for l in 1..=n {
        for k in 1..=n + 1 {
            let wid = Matching::index(n, l, k);
            wp[wid] = white_position(n, l, k);
            for d in Dir::ALL {
                let Some((i, j)) = d.black_of(n, l, k) else {
                    continue;
                };
                let weight = match d {
                    Dir::DL => w.a(l, k),
                    Dir::UL => w.b(l, k - 1),
                    _ => 1.0,
                };
                g.add_edge(wid, (i - 1) * n + j - 1, weight)
                    .expect("distinct aztec edges");
                edge_dir.push(((l, k), d));
            }
        }
    }
    g.white_pos = Some(wp);
    g.black_pos = Some(bp);
    AztecGraph {
        n,
        graph: g,
        edge_dir,
    }
}

impl AztecGraph {
    pub fn matching_from_edges(&self, edges: &[usize]) -> Matching {
        let n = self.n;
        let mut dir = vec![Dir::DL; n * (n + 1)];
        for &e in edges {
            let ((l, k), d) = self.edge_dir[e];
            dir[Matching::index(n, l, k)] = d;
        }
        Matching { n, dir }
    }
}

/// Every matching of the size-`n` diamond with its exact probability, and `log Z`.
pub fn exact_aztec_measure(w: &WeightField) -> Result<(Vec<(Matching, f64)>, f64), OracleError> {
    let ag = aztec_graph(w);
    let m = enumerate_matchings(&ag.graph)?;
    let out = m
        .matchings
        .iter()
        .map(|(e, p)| (ag.matching_from_edges(e), *p))
        .collect();
    Ok((out, m.log_z))
}

fn logaddexp(x: f64, y: f64) -> f64 {
    if x == f64::NEG_INFINITY {
        return y;
    }
    let (hi, lo) = if x > y { (x, y) } else { (y, x) };
    hi + (lo - hi).exp().ln_1p()
}

/// `log Z` by a column transfer over black-coverage masks. Exact, and
/// independent of both the enumerator and the shuffle recursions; usable up to
/// `n` around 12.
pub fn aztec_transfer_log_z(w: &WeightField) -> f64 {
    let n = w.level;
    assert!(n < 20, "transfer oracle limited to small n");
    let full = (1u32 << n) - 1;
    // state: blacks of the current column already covered from the left
    let mut states: Vec<f64> = vec![f64::NEG_INFINITY; 1 << n];
    states[0] = 0.0;
    for l in 1..=n {
        let mut next = vec![f64::NEG_INFINITY; 1 << n];
        for (mask, &lv) in states.iter().enumerate() {
            if lv == f64::NEG_INFINITY {
                continue;
            }
            column(w, l, 1, mask as u32, 0, lv, &mut next);
        }
        states = next;
    }
    states[full as usize]
}

/// Assigns whites `w(l, k..)`; `cur` marks covered blacks of column `l`,
/// `nxt` those of column `l + 1`.
fn column(w: &WeightField, l: usize, k: usize, cur: u32, nxt: u32, lv: f64, out: &mut [f64]) {
    let n = w.level;
    if k == n + 2 {
        if cur == (1u32 << n) - 1 {
            out[nxt as usize] = logaddexp(out[nxt as usize], lv);
        }
        return;
    }
    // black j of column l must be covered before white j+2 is reached
    if k >= 3 && cur >> (k - 3) & 1 == 0 {
        return;
    }
    if k <= n && cur >> (k - 1) & 1 == 0 {
        column(w, l, k + 1, cur | 1 << (k - 1), nxt, lv + w.a(l, k).ln(), out);
    }
    if k >= 2 && cur >> (k - 2) & 1 == 0 {
        column(w, l, k + 1, cur | 1 << (k - 2), nxt, lv + w.b(l, k - 1).ln(), out);
    }
    if k <= n && nxt >> (k - 1) & 1 == 0 {
        column(w, l, k + 1, cur, nxt | 1 << (k - 1), lv, out);
    }
    if k >= 2 && nxt >> (k - 2) & 1 == 0 {
        column(w, l, k + 1, cur, nxt | 1 << (k - 2), lv, out);
    }
}
