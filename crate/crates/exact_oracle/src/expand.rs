use crate::{BipartiteGraph, OracleError, Vertex};

/// A vertex split into itself and a twin, joined through a new middle vertex
/// of the opposite colour by two unit edges.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub graph: BipartiteGraph,
    pub vertex: Vertex,
    pub middle: Vertex,
    pub twin: Vertex,
    pub moved: Vec<usize>,
    /// Edge `vertex`–`middle`.
    pub inner_edge: usize,
    /// Edge `middle`–`twin`.
    pub twin_edge: usize,
}

/// Moves the edges `moved` (all incident to `v`) onto a new twin of `v`.
/// Edge indices of the original graph are preserved.
pub fn vertex_expand(g: &BipartiteGraph, v: Vertex, moved: &[usize]) -> Result<Expansion, OracleError> {
    let in_range = match v {
        Vertex::White(w) => w < g.n_white,
        Vertex::Black(b) => b < g.n_black,
    };
    if !in_range {
        return Err(OracleError::BadVertex(format!("{v:?}")));
    }
    let inc = g.incident(v);
    for e in moved {
        if !inc.contains(e) {
            return Err(OracleError::PatternMismatch(format!("edge {e} not incident to {v:?}")));
        }
    }
    let mut h = g.clone();
    let (middle, twin, inner_edge, twin_edge);
    match v {
        Vertex::White(w) => {
            let m = h.add_black();
            let t = h.add_white();
            for &e in moved {
                h.edges[e].white = t;
            }
            inner_edge = h.add_edge(w, m, 1.0)?;
            twin_edge = h.add_edge(t, m, 1.0)?;
            if let Some(p) = &mut h.white_pos {
                p[t] = p[w];
            }
            middle = Vertex::Black(m);
            twin = Vertex::White(t);
        }
        Vertex::Black(b) => {
            let m = h.add_white();
            let t = h.add_black();
            for &e in moved {
                h.edges[e].black = t;
            }
            inner_edge = h.add_edge(m, b, 1.0)?;
            twin_edge = h.add_edge(m, t, 1.0)?;
            if let Some(p) = &mut h.black_pos {
                p[t] = p[b];
            }
            middle = Vertex::White(m);
            twin = Vertex::Black(t);
        }
    }
    Ok(Expansion {
        graph: h,
        vertex: v,
        middle,
        twin,
        moved: moved.to_vec(),
        inner_edge,
        twin_edge,
    })
}

impl Expansion {
    /// Image of a matching of the original graph.
    pub fn map_matching(&self, matching: &[usize]) -> Vec<usize> {
        let mut m = matching.to_vec();
        if matching.iter().any(|e| self.moved.contains(e)) {
            m.push(self.inner_edge);
        } else {
            m.push(self.twin_edge);
        }
        m.sort_unstable();
        m
    }
}

/// Inverse of [`vertex_expand`]: `middle` and `twin` must be the last vertices
/// of their colours and `middle` must have exactly the two unit edges.
pub fn vertex_contract(g: &BipartiteGraph, v: Vertex, middle: Vertex, twin: Vertex) -> Result<BipartiteGraph, OracleError> {
    let mismatch = |s: &str| Err(OracleError::PatternMismatch(s.to_string()));
    let last = |x: Vertex| match x {
        Vertex::White(w) => w + 1 == g.n_white,
        Vertex::Black(b) => b + 1 == g.n_black,
    };
    if !last(middle) || !last(twin) {
        return mismatch("middle and twin must be the newest vertices");
    }
    let mid_edges = g.incident(middle);
    if mid_edges.len() != 2 {
        return mismatch("middle vertex must have degree 2");
    }
    let ends: Vec<Vertex> = mid_edges.iter().map(|&e| g.other(e, middle)).collect();
    if !(ends.contains(&v) && ends.contains(&twin)) {
        return mismatch("middle must join vertex and twin");
    }
    if mid_edges.iter().any(|&e| (g.edges[e].weight - 1.0).abs() > 1e-12) {
        return mismatch("middle edges must have weight 1");
    }
    let mut h = g.clone();
    h.edges = g
        .edges
        .iter()
        .enumerate()
        .filter(|(e, _)| !mid_edges.contains(e))
        .map(|(_, ed)| {
            let mut ed = *ed;
            match (v, twin) {
                (Vertex::White(a), Vertex::White(t)) if ed.white == t => ed.white = a,
                (Vertex::Black(a), Vertex::Black(t)) if ed.black == t => ed.black = a,
                _ => {}
            }
            ed
        })
        .collect();
    // middle and twin have opposite colours
    h.n_white -= 1;
    h.n_black -= 1;
    if let Some(p) = &mut h.white_pos {
        p.truncate(h.n_white);
    }
    if let Some(p) = &mut h.black_pos {
        p.truncate(h.n_black);
    }
    for (i, a) in h.edges.iter().enumerate() {
        if h.edges[..i].iter().any(|b| b.white == a.white && b.black == a.black) {
            return Err(OracleError::Duplicate(a.white, a.black));
        }
    }
    Ok(h)
}
