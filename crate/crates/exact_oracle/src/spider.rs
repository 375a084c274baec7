use crate::{BipartiteGraph, OracleError, Vertex};

/// Result of contracting a square face with four unit-weight legs.
#[derive(Debug, Clone)]
pub struct SpiderMove {
    pub graph: BipartiteGraph,
    /// `log Z(old) = log_factor + log Z(new)`.
    pub log_factor: f64,
    pub white_map: Vec<Option<usize>>,
    pub black_map: Vec<Option<usize>>,
    /// Old edge index to new edge index, for edges away from the square.
    pub edge_map: Vec<Option<usize>>,
    /// Square edges in the old graph, in cyclic order starting at `square[0]`.
    pub square_edges: [usize; 4],
    /// Leg `i` joins `square[i]` to its outer neighbour.
    pub legs: [usize; 4],
    /// New edges joining outer neighbours `i` and `i+1`.
    pub new_edges: [usize; 4],
    /// True if any new edge was merged into an existing one.
    pub merged: bool,
}

fn edge_between(g: &BipartiteGraph, u: Vertex, v: Vertex) -> Option<usize> {
    match (u, v) {
        (Vertex::White(w), Vertex::Black(b)) | (Vertex::Black(b), Vertex::White(w)) => g.find_edge(w, b),
        _ => None,
    }
}

/// Applies the spider move to the square `square` (cyclic, alternating colours,
/// starting with a white vertex). Each square vertex must have degree 3, its
/// third edge having weight 1.
pub fn spider_move(g: &BipartiteGraph, square: [Vertex; 4]) -> Result<SpiderMove, OracleError> {
    let mismatch = |s: &str| Err(OracleError::PatternMismatch(s.to_string()));
    for (i, v) in square.iter().enumerate() {
        let want_white = i % 2 == 0;
        if matches!(v, Vertex::White(_)) != want_white {
            return mismatch("square must alternate white, black, white, black");
        }
        let ok = match *v {
            Vertex::White(w) => w < g.n_white,
            Vertex::Black(b) => b < g.n_black,
        };
        if !ok {
            return Err(OracleError::BadVertex(format!("{v:?}")));
        }
    }
    let mut square_edges = [0; 4];
    for i in 0..4 {
        match edge_between(g, square[i], square[(i + 1) % 4]) {
            Some(e) => square_edges[i] = e,
            None => return mismatch("square side missing"),
        }
    }
    let mut legs = [0; 4];
    let mut outer = [Vertex::White(0); 4];
    for i in 0..4 {
        let inc = g.incident(square[i]);
        if inc.len() != 3 {
            return mismatch("square vertex must have degree 3");
        }
        let leg = inc
            .into_iter()
            .find(|e| !square_edges.contains(e))
            .expect("degree 3 with two square sides");
        if (g.edges[leg].weight - 1.0).abs() > 1e-12 {
            return mismatch("leg weight must be 1");
        }
        legs[i] = leg;
        outer[i] = g.other(leg, square[i]);
    }
    for i in 0..4 {
        if square.contains(&outer[i]) || outer[..i].contains(&outer[i]) {
            return mismatch("outer vertices must be distinct and off the square");
        }
    }

    let removed = |v: Vertex| square.contains(&v);
    let mut white_map = vec![None; g.n_white];
    let mut black_map = vec![None; g.n_black];
    let mut h = BipartiteGraph::new(0, 0);
    let mut wp = Vec::new();
    let mut bp = Vec::new();
    for w in 0..g.n_white {
        if !removed(Vertex::White(w)) {
            white_map[w] = Some(h.n_white);
            h.n_white += 1;
            if let Some(p) = &g.white_pos {
                wp.push(p[w]);
            }
        }
    }
    for b in 0..g.n_black {
        if !removed(Vertex::Black(b)) {
            black_map[b] = Some(h.n_black);
            h.n_black += 1;
            if let Some(p) = &g.black_pos {
                bp.push(p[b]);
            }
        }
    }
    if g.white_pos.is_some() {
        h.white_pos = Some(wp);
    }
    if g.black_pos.is_some() {
        h.black_pos = Some(bp);
    }
    let mut edge_map = vec![None; g.edges.len()];
    for (e, ed) in g.edges.iter().enumerate() {
        if let (Some(w), Some(b)) = (white_map[ed.white], black_map[ed.black]) {
            edge_map[e] = Some(h.add_edge(w, b, ed.weight)?);
        }
    }

    let [w, x, z, y] = square_edges.map(|e| g.edges[e].weight);
    let d = w * z + x * y;
    // new edge between outer i and outer i+1 takes the weight of the opposite side
    let new_weights = [z / d, y / d, w / d, x / d];
    let mut new_edges = [0; 4];
    let mut merged = false;
    for i in 0..4 {
        let (u, v) = (outer[i], outer[(i + 1) % 4]);
        let (wo, bo) = match (u, v) {
            (Vertex::White(a), Vertex::Black(b)) | (Vertex::Black(b), Vertex::White(a)) => (a, b),
            _ => unreachable!("outer vertices alternate colours"),
        };
        let (wn, bn) = (white_map[wo].unwrap(), black_map[bo].unwrap());
        merged |= h.find_edge(wn, bn).is_some();
        new_edges[i] = h.add_or_merge(wn, bn, new_weights[i])?;
    }
    Ok(SpiderMove {
        graph: h,
        log_factor: d.ln(),
        white_map,
        black_map,
        edge_map,
        square_edges,
        legs,
        new_edges,
        merged,
    })
}

impl SpiderMove {
    /// Conditional law of the new matching given an old one. Pushing the old
    /// dimer measure through it gives the new dimer measure.
    pub fn couple(&self, matching: &[usize]) -> Result<Vec<(Vec<usize>, f64)>, OracleError> {
        if self.merged {
            return Err(OracleError::PatternMismatch(
                "coupling needs outer vertices without existing edges between them".into(),
            ));
        }
        let mut base = Vec::new();
        let mut used = [false; 4];
        for &e in matching {
            if let Some(i) = self.legs.iter().position(|&l| l == e) {
                used[i] = true;
            } else if let Some(ne) = self.edge_map[e] {
                base.push(ne);
            }
        }
        let with = |extra: &[usize]| {
            let mut m = base.clone();
            m.extend_from_slice(extra);
            m.sort_unstable();
            m
        };
        let count = used.iter().filter(|&&u| u).count();
        match count {
            0 => Ok(vec![(with(&[]), 1.0)]),
            2 => {
                let i = (0..4)
                    .find(|&i| used[i] && used[(i + 1) % 4])
                    .ok_or_else(|| OracleError::InvalidMatching("opposite legs".into()))?;
                Ok(vec![(with(&[self.new_edges[i]]), 1.0)])
            }
            4 => {
                let wt = |i: usize| self.graph.edges[self.new_edges[i]].weight;
                let p = wt(0) * wt(2) / (wt(0) * wt(2) + wt(1) * wt(3));
                Ok(vec![
                    (with(&[self.new_edges[0], self.new_edges[2]]), p),
                    (with(&[self.new_edges[1], self.new_edges[3]]), 1.0 - p),
                ])
            }
            _ => Err(OracleError::InvalidMatching(format!("{count} legs used"))),
        }
    }
}
