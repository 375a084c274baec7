use serde::{Deserialize, Serialize};

use crate::OracleError;

/// A vertex of a bipartite graph, addressed by colour and per-colour id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    White(usize),
    Black(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub white: usize,
    pub black: usize,
    pub weight: f64,
}

/// Small weighted bipartite graph. Whites are `0..n_white`, blacks `0..n_black`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BipartiteGraph {
    pub n_white: usize,
    pub n_black: usize,
    pub edges: Vec<Edge>,
    pub white_pos: Option<Vec<(i64, i64)>>,
    pub black_pos: Option<Vec<(i64, i64)>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    white: Vec<usize>,
    black: Vec<usize>,
    edges: Vec<(usize, usize, f64)>,
}

impl BipartiteGraph {
    pub fn new(n_white: usize, n_black: usize) -> Self {
        Self {
            n_white,
            n_black,
            ..Default::default()
        }
    }

    pub fn find_edge(&self, white: usize, black: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.white == white && e.black == black)
    }

    /// Adds an edge; duplicates and non-positive weights are rejected.
    pub fn add_edge(&mut self, white: usize, black: usize, weight: f64) -> Result<usize, OracleError> {
        if white >= self.n_white || black >= self.n_black {
            return Err(OracleError::BadVertex(format!("edge ({white}, {black})")));
        }
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(OracleError::BadWeight(weight));
        }
        if self.find_edge(white, black).is_some() {
            return Err(OracleError::Duplicate(white, black));
        }
        self.edges.push(Edge {
            white,
            black,
            weight,
        });
        Ok(self.edges.len() - 1)
    }

    /// Adds an edge, summing the weight into an existing parallel edge.
    pub fn add_or_merge(&mut self, white: usize, black: usize, weight: f64) -> Result<usize, OracleError> {
        match self.find_edge(white, black) {
            Some(e) => {
                self.edges[e].weight += weight;
                Ok(e)
            }
            None => self.add_edge(white, black, weight),
        }
    }

    pub fn add_white(&mut self) -> usize {
        self.n_white += 1;
        if let Some(p) = &mut self.white_pos {
            p.push((0, 0));
        }
        self.n_white - 1
    }

    pub fn add_black(&mut self) -> usize {
        self.n_black += 1;
        if let Some(p) = &mut self.black_pos {
            p.push((0, 0));
        }
        self.n_black - 1
    }

    pub fn incident(&self, v: Vertex) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| match v {
                Vertex::White(w) => self.edges[e].white == w,
                Vertex::Black(b) => self.edges[e].black == b,
            })
            .collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.incident(v).len()
    }

    /// Other endpoint of edge `e` seen from `v`.
    pub fn other(&self, e: usize, v: Vertex) -> Vertex {
        let ed = self.edges[e];
        match v {
            Vertex::White(_) => Vertex::Black(ed.black),
            Vertex::Black(_) => Vertex::White(ed.white),
        }
    }

    /// Edges sorted by endpoints; equal for graphs that differ only in edge order.
    pub fn canonical_edges(&self) -> Vec<(usize, usize, f64)> {
        let mut v: Vec<_> = self.edges.iter().map(|e| (e.white, e.black, e.weight)).collect();
        v.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        v
    }

    pub fn same_as(&self, other: &BipartiteGraph, tol: f64) -> bool {
        if (self.n_white, self.n_black) != (other.n_white, other.n_black) {
            return false;
        }
        let (a, b) = (self.canonical_edges(), other.canonical_edges());
        a.len() == b.len()
            && a.iter().zip(&b).all(|(x, y)| {
                x.0 == y.0 && x.1 == y.1 && (x.2 - y.2).abs() <= tol * x.2.abs().max(1.0)
            })
    }

    /// Log weight of an edge set.
    pub fn log_weight(&self, edges: &[usize]) -> f64 {
        edges.iter().map(|&e| self.edges[e].weight.ln()).sum()
    }

    /// True if `edges` is a perfect matching.
    pub fn is_perfect_matching(&self, edges: &[usize]) -> bool {
        if self.n_white != self.n_black || edges.len() != self.n_white {
            return false;
        }
        let mut w = vec![false; self.n_white];
        let mut b = vec![false; self.n_black];
        for &e in edges {
            let ed = self.edges[e];
            if std::mem::replace(&mut w[ed.white], true) || std::mem::replace(&mut b[ed.black], true) {
                return false;
            }
        }
        true
    }

    /// Connected components as lists of vertices.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let total = self.n_white + self.n_black;
        let id = |v: Vertex| match v {
            Vertex::White(w) => w,
            Vertex::Black(b) => self.n_white + b,
        };
        let mut parent: Vec<usize> = (0..total).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.edges {
            let (a, b) = (
                root(&mut parent, id(Vertex::White(e.white))),
                root(&mut parent, id(Vertex::Black(e.black))),
            );
            parent[a] = b;
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<Vertex>> = Default::default();
        for w in 0..self.n_white {
            let r = root(&mut parent, w);
            groups.entry(r).or_default().push(Vertex::White(w));
        }
        for b in 0..self.n_black {
            let r = root(&mut parent, self.n_white + b);
            groups.entry(r).or_default().push(Vertex::Black(b));
        }
        groups.into_values().collect()
    }

    pub fn to_json(&self) -> String {
        let j = GraphJson {
            white: (0..self.n_white).collect(),
            black: (0..self.n_black).collect(),
            edges: self.edges.iter().map(|e| (e.white, e.black, e.weight)).collect(),
        };
        serde_json::to_string(&j).expect("serializable")
    }

    /// Vertex ids in the JSON form may be arbitrary; they are renumbered in order.
    pub fn from_json(text: &str) -> Result<Self, OracleError> {
        let j: GraphJson =
            serde_json::from_str(text).map_err(|e| OracleError::Parse(e.to_string()))?;
        let wmap = |id: usize| j.white.iter().position(|&x| x == id);
        let bmap = |id: usize| j.black.iter().position(|&x| x == id);
        let mut g = Self::new(j.white.len(), j.black.len());
        for (w, b, wt) in &j.edges {
            let (Some(w2), Some(b2)) = (wmap(*w), bmap(*b)) else {
                return Err(OracleError::BadVertex(format!("edge ({w}, {b})")));
            };
            g.add_edge(w2, b2, *wt)?;
        }
        Ok(g)
    }
}
