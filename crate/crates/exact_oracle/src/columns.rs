//! Graphs assembled from `(+)`- and `(-)`-columns, the swap graphs built from
//! a shuffle cascade, and the bijection from their matchings to path tuples.
//!
//! Column convention: the outer vertices of every column are white and the
//! middle vertices black. The horizontal swap graph uses the same underlying
//! graph with its colours exchanged; matchings are unaffected, so both are
//! built with this convention.

use std::collections::HashMap;

use aztec_model::Dir;
use polymer_models::{PathTuple, Step};
use weight_engine::Cascade;

use crate::{BipartiteGraph, OracleError, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeKind {
    Pendant,
    /// `(+)`: input white to black.
    PlusLeft,
    /// `(+)`: black to the output white above-right.
    PlusUp,
    /// `(+)`: black to the output white to its right.
    PlusFlat,
    /// `(-)`: input white to its right neighbour.
    MinusLeft,
    /// `(-)`: input white below-left to black.
    MinusUp,
    /// `(-)`: black to output white.
    MinusRight,
}

/// Which column an edge lives in and its role there. `black` is 1-based
/// from the top of the column (for pendants: the pendant's row).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeTag {
    pub block: u8,
    pub column: usize,
    pub black: usize,
    pub kind: EdgeKind,
}

/// A graph made of consecutive columns between two pendant layers.
#[derive(Debug, Clone)]
pub struct ColumnGraph {
    pub graph: BipartiteGraph,
    pub tags: Vec<EdgeTag>,
    /// White ids of the output layer of each column, top first; index 0 is
    /// the layer right of the left pendants.
    pub layers: Vec<Vec<usize>>,
}

/// Incremental builder; each column attaches to the current white frontier.
#[derive(Debug, Clone)]
pub struct ColumnBuilder {
    g: BipartiteGraph,
    tags: Vec<EdgeTag>,
    frontier: Vec<usize>,
    layers: Vec<Vec<usize>>,
    top: i64,
    x: i64,
    block: u8,
    column: usize,
}

impl ColumnBuilder {
    /// `weights.len()` pendant blacks at `x = 0`, each joined to a white at `x = 1`.
    pub fn new(weights: &[f64]) -> Result<Self, OracleError> {
        let mut b = Self {
            g: BipartiteGraph::new(0, 0),
            tags: Vec::new(),
            frontier: Vec::new(),
            layers: Vec::new(),
            top: -1,
            x: 1,
            block: 0,
            column: 0,
        };
        b.g.white_pos = Some(Vec::new());
        b.g.black_pos = Some(Vec::new());
        for (j, &w) in weights.iter().enumerate() {
            let y = -1 - j as i64;
            let bk = b.black((0, y));
            let wh = b.white((1, y));
            b.edge(wh, bk, w, j + 1, EdgeKind::Pendant)?;
            b.frontier.push(wh);
        }
        b.layers.push(b.frontier.clone());
        Ok(b)
    }

    fn white(&mut self, pos: (i64, i64)) -> usize {
        let id = self.g.add_white();
        self.g.white_pos.as_mut().expect("positions")[id] = pos;
        id
    }

    fn black(&mut self, pos: (i64, i64)) -> usize {
        let id = self.g.add_black();
        self.g.black_pos.as_mut().expect("positions")[id] = pos;
        id
    }

    fn edge(&mut self, white: usize, black: usize, w: f64, k: usize, kind: EdgeKind) -> Result<(), OracleError> {
        self.g.add_edge(white, black, w)?;
        self.tags.push(EdgeTag {
            block: self.block,
            column: self.column,
            black: k,
            kind,
        });
        Ok(())
    }

    /// Subsequent columns are tagged with this block and numbered from 1.
    pub fn block(&mut self, block: u8) -> &mut Self {
        self.block = block;
        self.column = 0;
        self
    }

    pub fn frontier_len(&self) -> usize {
        self.frontier.len()
    }

    /// `(+)`-column on `m` frontier whites; `weights(k) = (left, up, flat)`.
    pub fn plus_with(&mut self, m: usize, mut weights: impl FnMut(usize) -> (f64, f64, f64)) -> Result<&mut Self, OracleError> {
        if self.frontier.len() != m {
            return Err(OracleError::Range(format!(
                "(+)-column of size {m} on {} whites",
                self.frontier.len()
            )));
        }
        self.column += 1;
        let out: Vec<usize> = (0..=m as i64).map(|t| self.white((self.x + 2, self.top + 1 - t))).collect();
        for k in 1..=m {
            let bk = self.black((self.x + 1, self.top - k as i64 + 1));
            let (l, u, f) = weights(k);
            self.edge(self.frontier[k - 1], bk, l, k, EdgeKind::PlusLeft)?;
            self.edge(out[k - 1], bk, u, k, EdgeKind::PlusUp)?;
            self.edge(out[k], bk, f, k, EdgeKind::PlusFlat)?;
        }
        self.top += 1;
        self.x += 2;
        self.frontier = out;
        self.layers.push(self.frontier.clone());
        Ok(self)
    }

    /// `(-)`-column on `m + 1` frontier whites; `weights(k) = (left, up, right)`.
    /// With `m = 0` the single frontier white becomes a dead end.
    pub fn minus_with(&mut self, m: usize, mut weights: impl FnMut(usize) -> (f64, f64, f64)) -> Result<&mut Self, OracleError> {
        if self.frontier.len() != m + 1 {
            return Err(OracleError::Range(format!(
                "(-)-column of size {m} on {} whites",
                self.frontier.len()
            )));
        }
        self.column += 1;
        let mut out = Vec::with_capacity(m);
        for k in 1..=m {
            let y = self.top - k as i64 + 1;
            let bk = self.black((self.x + 1, y));
            let wh = self.white((self.x + 2, y));
            let (l, u, r) = weights(k);
            self.edge(self.frontier[k - 1], bk, l, k, EdgeKind::MinusLeft)?;
            self.edge(self.frontier[k], bk, u, k, EdgeKind::MinusUp)?;
            self.edge(wh, bk, r, k, EdgeKind::MinusRight)?;
            out.push(wh);
        }
        self.x += 2;
        self.frontier = out;
        self.layers.push(self.frontier.clone());
        Ok(self)
    }

    /// `(+)`-column with flat weights `1 - beta_k` and up weights `beta_k`.
    pub fn plus(&mut self, beta: &[f64]) -> Result<&mut Self, OracleError> {
        self.plus_with(beta.len(), |k| (1.0, beta[k - 1], 1.0 - beta[k - 1]))
    }

    /// `(-)`-column with weights `gamma_k` on the black-to-output edges.
    pub fn minus(&mut self, gamma: &[f64]) -> Result<&mut Self, OracleError> {
        self.minus_with(gamma.len(), |k| (1.0, 1.0, gamma[k - 1]))
    }

    /// Closes the frontier with unit-weight pendant blacks.
    pub fn finish(mut self) -> Result<ColumnGraph, OracleError> {
        self.block = self.block.saturating_add(1);
        self.column = 1;
        let frontier = std::mem::take(&mut self.frontier);
        for (k, &wh) in frontier.iter().enumerate() {
            let y = self.g.white_pos.as_ref().expect("positions")[wh].1;
            let bk = self.black((self.x + 1, y));
            self.edge(wh, bk, 1.0, k + 1, EdgeKind::Pendant)?;
        }
        Ok(ColumnGraph {
            graph: self.g,
            tags: self.tags,
            layers: self.layers,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwapKind {
    /// Beta weights on `(+)`-columns, Gamma weights on `(-)`-columns.
    Vertical,
    /// `a` weights on `(+')`-columns, `1/b` on `(-')`-columns.
    Horizontal,
}

/// Block numbering of a swap graph: 0 left pendants, 1..=4 the four column
/// blocks, 5 right pendants.
pub const BLOCK_LEFT_PENDANT: u8 = 0;
pub const BLOCK_RIGHT_PENDANT: u8 = 5;

/// A swap graph for slice `ell` of a size-`n` diamond, possibly trimmed.
#[derive(Debug, Clone)]
pub struct SwapGraph {
    pub kind: SwapKind,
    pub n: usize,
    pub ell: usize,
    pub graph: BipartiteGraph,
    pub tags: Vec<EdgeTag>,
    /// Whites between the last column of block 2 and the first of block 3, top first.
    pub central: Vec<usize>,
    /// Log weight of the deleted frozen edges (0 before trimming).
    pub log_frozen: f64,
    pub trimmed: bool,
}

// Weights that never enter a matching (frozen away) or lie outside the cascade.
const PLACEHOLDER_BETA: f64 = 0.5;
const PLACEHOLDER: f64 = 1.0;

fn check_range(c: &Cascade, ell: usize) -> Result<usize, OracleError> {
    let n = c.n();
    if n == 0 || ell == 0 || ell > n + 1 {
        return Err(OracleError::Range(format!("slice {ell} of a size-{n} diamond")));
    }
    Ok(n)
}

fn gamma_at(c: &Cascade, level: usize, i: usize, j: usize) -> f64 {
    if level == 0 || i > level || j == 0 || j > level {
        return PLACEHOLDER;
    }
    let f = c.level(level);
    f.a(i, j) + f.b(i, j)
}

fn beta_at(c: &Cascade, level: usize, i: usize, j: usize) -> f64 {
    if level == 0 || i > level || j == 0 || j > level {
        return PLACEHOLDER_BETA;
    }
    let f = c.level(level);
    f.a(i, j) / (f.a(i, j) + f.b(i, j))
}

fn a_at(c: &Cascade, level: usize, i: usize, j: usize) -> f64 {
    if level == 0 || i > level || j == 0 || j > level {
        return PLACEHOLDER;
    }
    c.level(level).a(i, j)
}

fn inv_b_at(c: &Cascade, level: usize, i: usize, j: usize) -> f64 {
    if level == 0 || i > level || j == 0 || j > level {
        return PLACEHOLDER;
    }
    1.0 / c.level(level).b(i, j)
}

/// Column sizes of the four blocks; `ell = n + 1` has its own shape (the
/// second block then builds up from a single fresh white).
fn block_sizes(n: usize, ell: usize) -> [Vec<usize>; 4] {
    if ell == n + 1 {
        return [(1..=n).map(|i| n - i).collect(), (0..n).collect(), vec![], vec![]];
    }
    [
        (1..ell).map(|i| n - i).collect(),
        (1..=ell).map(|i| n - ell + i).collect(),
        (1..=n - ell + 1).map(|i| n - i + 1).collect(),
        (1..=n - ell).map(|i| ell + i - 1).collect(),
    ]
}

fn build_swap(c: &Cascade, ell: usize, kind: SwapKind) -> Result<SwapGraph, OracleError> {
    let n = check_range(c, ell)?;
    let sizes = block_sizes(n, ell);
    let pendant: Vec<f64> = (1..=n)
        .map(|j| match kind {
            SwapKind::Vertical => gamma_at(c, n, 1, j),
            SwapKind::Horizontal => 1.0,
        })
        .collect();
    let mut b = ColumnBuilder::new(&pendant)?;
    let mut central_layer = 0;
    for (bi, cols) in sizes.iter().enumerate() {
        let block = bi as u8 + 1;
        b.block(block);
        for (idx, &m) in cols.iter().enumerate() {
            let i = idx + 1;
            let is_plus = block % 2 == 0;
            let (level, row_of, col_of): (usize, Box<dyn Fn(usize) -> usize>, Box<dyn Fn(usize) -> usize>) =
                match (block, kind) {
                    (1, SwapKind::Vertical) => (n - i, Box::new(|_| 1), Box::new(|k| k)),
                    (1, SwapKind::Horizontal) => (n - i, Box::new(|k| k), Box::new(|_| 0)),
                    (2, SwapKind::Vertical) => (m, Box::new(move |_| i), Box::new(|k| k)),
                    (2, SwapKind::Horizontal) => (m, Box::new(|k| k), Box::new(move |_| i)),
                    (3, SwapKind::Vertical) => (m, Box::new(move |_| ell + 1), Box::new(|k| k)),
                    (3, SwapKind::Horizontal) => (m, Box::new(|k| k), Box::new(move |_| ell)),
                    (4, SwapKind::Vertical) => (m, Box::new(move |_| ell + i), Box::new(|k| k)),
                    (_, SwapKind::Horizontal) => (m, Box::new(|k| k), Box::new(move |_| ell + i)),
                    _ => unreachable!("four blocks"),
                };
            // ell = n + 1: every second-block weight is frozen
            let frozen_block = ell == n + 1 && block == 2;
            match (is_plus, kind) {
                (true, SwapKind::Vertical) => {
                    b.plus_with(m, |k| {
                        let beta = if frozen_block {
                            PLACEHOLDER_BETA
                        } else {
                            beta_at(c, level, row_of(k), col_of(k))
                        };
                        (1.0, beta, 1.0 - beta)
                    })?;
                }
                (true, SwapKind::Horizontal) => {
                    b.plus_with(m, |k| {
                        let a = if frozen_block {
                            PLACEHOLDER
                        } else {
                            a_at(c, level, row_of(k), col_of(k))
                        };
                        (1.0, a, 1.0)
                    })?;
                }
                (false, SwapKind::Vertical) => {
                    b.minus_with(m, |k| (1.0, 1.0, gamma_at(c, level, row_of(k), col_of(k))))?;
                }
                (false, SwapKind::Horizontal) => {
                    b.minus_with(m, |k| {
                        let w = inv_b_at(c, level, row_of(k), col_of(k));
                        (1.0, w, w)
                    })?;
                }
            }
        }
        if block == 2 {
            central_layer = b.layers.len() - 1;
        }
    }
    let central = b.layers[central_layer].clone();
    let cg = b.finish()?;
    Ok(SwapGraph {
        kind,
        n,
        ell,
        graph: cg.graph,
        tags: cg.tags,
        central,
        log_frozen: 0.0,
        trimmed: false,
    })
}

/// Vertical swap graph for slice `ell` in `1..=n+1`, weights from the cascade.
pub fn build_vswap(c: &Cascade, ell: usize) -> Result<SwapGraph, OracleError> {
    build_swap(c, ell, SwapKind::Vertical)
}

/// Horizontal swap graph for slice `ell` in `1..=n+1`, weights from the cascade.
pub fn build_hswap(c: &Cascade, ell: usize) -> Result<SwapGraph, OracleError> {
    build_swap(c, ell, SwapKind::Horizontal)
}

impl SwapGraph {
    /// Edges contained in every perfect matching: the pendants, the
    /// black-to-white edges of the first block and the white-to-black edges
    /// of the fourth.
    pub fn frozen_edges(&self) -> Vec<usize> {
        (0..self.tags.len())
            .filter(|&e| {
                let t = self.tags[e];
                matches!(
                    (t.block, t.kind),
                    (BLOCK_LEFT_PENDANT | BLOCK_RIGHT_PENDANT, EdgeKind::Pendant)
                        | (1, EdgeKind::MinusRight)
                        | (4, EdgeKind::PlusLeft)
                )
            })
            .collect()
    }

    /// Deletes the endpoints of every frozen edge. Only for `ell <= n`, where
    /// what remains is the middle component.
    pub fn trim_frozen(&self) -> Result<SwapGraph, OracleError> {
        if self.trimmed {
            return Ok(self.clone());
        }
        if self.ell > self.n {
            return Err(OracleError::Range("the last slice has no middle component".into()));
        }
        let frozen = self.frozen_edges();
        let g = &self.graph;
        let mut dead_w = vec![false; g.n_white];
        let mut dead_b = vec![false; g.n_black];
        let mut log_frozen = 0.0;
        for &e in &frozen {
            let ed = g.edges[e];
            if std::mem::replace(&mut dead_w[ed.white], true) || std::mem::replace(&mut dead_b[ed.black], true) {
                return Err(OracleError::InvalidMatching("frozen edges overlap".into()));
            }
            log_frozen += ed.weight.ln();
        }
        let renumber = |dead: &[bool]| {
            let mut next = 0;
            dead.iter()
                .map(|&d| {
                    (!d).then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect::<Vec<Option<usize>>>()
        };
        let wmap = renumber(&dead_w);
        let bmap = renumber(&dead_b);
        let nw = wmap.iter().flatten().count();
        let nb = bmap.iter().flatten().count();
        let mut out = BipartiteGraph::new(nw, nb);
        let keep = |pos: &Option<Vec<(i64, i64)>>, map: &[Option<usize>], len: usize| {
            pos.as_ref().map(|p| {
                let mut v = vec![(0, 0); len];
                for (old, new) in map.iter().enumerate() {
                    if let Some(new) = new {
                        v[*new] = p[old];
                    }
                }
                v
            })
        };
        out.white_pos = keep(&g.white_pos, &wmap, nw);
        out.black_pos = keep(&g.black_pos, &bmap, nb);
        let mut tags = Vec::new();
        for (e, ed) in g.edges.iter().enumerate() {
            if let (Some(w), Some(b)) = (wmap[ed.white], bmap[ed.black]) {
                out.add_edge(w, b, ed.weight)?;
                tags.push(self.tags[e]);
            }
        }
        let central = self
            .central
            .iter()
            .map(|&w| wmap[w].ok_or_else(|| OracleError::InvalidMatching("central white is frozen".into())))
            .collect::<Result<_, _>>()?;
        Ok(SwapGraph {
            kind: self.kind,
            n: self.n,
            ell: self.ell,
            graph: out,
            tags,
            central,
            log_frozen,
            trimmed: true,
        })
    }

    /// Polymer dimensions `(p, m)` attached to this slice.
    pub fn polymer_shape(&self) -> (usize, usize) {
        (self.n + 1 - self.ell, self.ell)
    }

    /// Path tuple of a perfect matching (full or trimmed graph): matched
    /// black-to-output edges of the second block become right and
    /// down-right steps, matched right and up edges of the third block
    /// become right and down steps.
    pub fn dimer_to_paths(&self, matching: &[usize]) -> Result<PathTuple, OracleError> {
        if self.ell > self.n {
            return Err(OracleError::Range("the last slice carries no paths".into()));
        }
        if !self.graph.is_perfect_matching(matching) {
            return Err(OracleError::InvalidMatching("not a perfect matching".into()));
        }
        let (p, m) = self.polymer_shape();
        let mut next: HashMap<(i64, i64), Step> = HashMap::new();
        for &e in matching {
            let t = self.tags[e];
            let k = t.black as i64;
            let step = match (t.block, t.kind) {
                (2, EdgeKind::PlusUp) => Some((t.column as i64 - m as i64 - 1, Step::Right)),
                (2, EdgeKind::PlusFlat) => Some((t.column as i64 - m as i64 - 1, Step::DownRight)),
                (3, EdgeKind::MinusRight) => Some((t.column as i64 - 1, Step::Right)),
                (3, EdgeKind::MinusUp) => Some((t.column as i64 - 1, Step::Down)),
                _ => None,
            };
            if let Some((x, s)) = step {
                next.insert((x, -k), s);
            }
        }
        PathTuple::trace(p, m, |v| next.get(&v).copied())
            .map_err(|e| OracleError::InvalidMatching(e.to_string()))
    }

    /// For each central white (top first), the direction of the Aztec edge at
    /// the white `w(ell, t + 1)` occupying the same place in the slice.
    pub fn central_directions(&self, matching: &[usize]) -> Result<Vec<Dir>, OracleError> {
        let mut out: Vec<Option<Dir>> = vec![None; self.central.len()];
        let pos_of = |w: usize| self.central.iter().position(|&c| c == w);
        for &e in matching {
            let t = self.tags[e];
            let w = self.graph.edges[e].white;
            let Some(idx) = pos_of(w) else { continue };
            let d = match (t.block, t.kind) {
                (2, EdgeKind::PlusUp) => Dir::DL,
                (2, EdgeKind::PlusFlat) => Dir::UL,
                (3, EdgeKind::MinusLeft) => Dir::DR,
                (3, EdgeKind::MinusUp) => Dir::UR,
                _ => return Err(OracleError::InvalidMatching(format!("central white {idx} on {t:?}"))),
            };
            out[idx] = Some(d);
        }
        out.into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| OracleError::InvalidMatching("central white unmatched".into()))
    }

    /// Labels `t + 1` of the central whites matched to their left.
    pub fn central_left_set(&self, matching: &[usize]) -> Result<Vec<usize>, OracleError> {
        Ok(self
            .central_directions(matching)?
            .iter()
            .enumerate()
            .filter(|(_, d)| matches!(d, Dir::DL | Dir::UL))
            .map(|(t, _)| t + 1)
            .collect())
    }

    pub fn vertex_position(&self, v: Vertex) -> Option<(i64, i64)> {
        match v {
            Vertex::White(w) => self.graph.white_pos.as_ref().map(|p| p[w]),
            Vertex::Black(b) => self.graph.black_pos.as_ref().map(|p| p[b]),
        }
    }
}
