//! Deterministic checks: every quantity on both sides is computed exactly
//! from a sampled environment.

use std::collections::{BTreeMap, BTreeSet};

use aztec_model::{horizontal_slice, shuffle_transition_distribution, vertical_slice, Matching};
use dist_core::RngStream;
use exact_oracle::{
    aztec_graph, aztec_transfer_log_z, build_hswap, build_vswap, enumerate_matchings,
    exact_aztec_measure, horizontal_polymer_weights, spider_move, tv_distance, vertex_contract,
    vertex_expand, vertical_polymer_weights, BipartiteGraph, ColumnBuilder, ColumnGraph, Law,
    SwapGraph, Vertex,
};
use polymer_models::hybrid_polymer_exact;
use weight_engine::{
    cascade, fock_face_weights, limit_face_weights, partition_product, sample_weight_field,
    vswap_update, Cascade, ParamSet,
};

use crate::report::{all_of, TestReport};
use crate::HarnessError;

pub const EXACT_TOL: f64 = 1e-10;

pub fn random_cascade(n: usize, rng: &mut RngStream) -> Result<Cascade, HarnessError> {
    // shapes drawn per environment keep the check away from a single parameter point
    let alpha = 0.5 + 1.5 * rng.uniform();
    let beta = 0.5 + 1.5 * rng.uniform();
    let params = ParamSet::homogeneous(alpha, beta, 2 * n + 2)?;
    Ok(cascade(&sample_weight_field(&params, n, rng)?))
}

/// Product formula for `log Z` against exhaustive enumeration.
pub fn factorization(sizes: &[usize], fields: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut worst = 0.0f64;
    for &n in sizes {
        let mut rng = RngStream::new(seed, n as u64);
        for _ in 0..fields {
            let c = random_cascade(n, &mut rng)?;
            let enumerated = enumerate_matchings(&aztec_graph(c.top()).graph)?.log_z;
            worst = worst.max((partition_product(&c) - enumerated).abs());
        }
    }
    Ok(TestReport::below("partition-factorization", worst, 1e-9)
        .with_sizes(vec![fields * sizes.len()])
        .with_seeds(vec![seed]))
}

/// `log Z_k - log Z_{k-1}` equals the log of the first-row sum at level `k`.
pub fn z_recurrence(max_level: usize, fields: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut rng = RngStream::new(seed, 0);
    let mut worst = 0.0f64;
    for _ in 0..fields {
        let c = random_cascade(max_level, &mut rng)?;
        let mut prev = 0.0;
        for k in 1..=max_level {
            let f = c.level(k);
            let z = if k <= 4 {
                exact_aztec_measure(f)?.1
            } else {
                aztec_transfer_log_z(f)
            };
            let row: f64 = (1..=k).map(|j| (f.a(1, j) + f.b(1, j)).ln()).sum();
            worst = worst.max((z - prev - row).abs());
            prev = z;
        }
    }
    Ok(TestReport::below("z-recurrence", worst, 1e-9)
        .with_sizes(vec![fields])
        .with_seeds(vec![seed]))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceKind {
    Vertical,
    Horizontal,
}

impl SliceKind {
    pub fn name(self) -> &'static str {
        match self {
            SliceKind::Vertical => "vertical",
            SliceKind::Horizontal => "horizontal",
        }
    }
}

/// Per environment: the swap-graph dimer measure pushed through the path
/// bijection equals the exact polymer measure, and the Aztec slice law
/// equals the law of the axis labels.
pub fn slice_matching(
    kind: SliceKind,
    n: usize,
    ell: usize,
    envs: usize,
    seed: u64,
) -> Result<TestReport, HarnessError> {
    let mut rng = RngStream::new(seed, (n * 100 + ell) as u64);
    let mut worst = 0.0f64;
    for _ in 0..envs {
        let c = random_cascade(n, &mut rng)?;
        let (graph, weights) = match kind {
            SliceKind::Vertical => (build_vswap(&c, ell)?, vertical_polymer_weights(&c, ell)?),
            SliceKind::Horizontal => (build_hswap(&c, ell)?, horizontal_polymer_weights(&c, ell)?),
        };
        let bar = graph.trim_frozen()?;
        let dimers = enumerate_matchings(&bar.graph)?;
        let mut paths = Law::new();
        for (m, p) in &dimers.matchings {
            *paths.entry(bar.dimer_to_paths(m)?).or_insert(0.0) += p;
        }
        let poly = hybrid_polymer_exact(&weights)?;
        let poly_law: Law<_> = poly.tuples.iter().cloned().collect();
        worst = worst.max(tv_distance(&paths, &poly_law));

        let (ms, _) = exact_aztec_measure(c.top())?;
        let mut slice = Law::new();
        for (m, p) in &ms {
            let s = match kind {
                SliceKind::Vertical => vertical_slice(m, ell)?,
                SliceKind::Horizontal => horizontal_slice(m, ell)?,
            };
            *slice.entry(s).or_insert(0.0) += p;
        }
        worst = worst.max(tv_distance(&slice, &poly.pushforward(|t| t.x_poly())));
    }
    Ok(TestReport::below(format!("{}-slice n={n} l={ell}", kind.name()), worst, EXACT_TOL)
        .with_sizes(vec![envs])
        .with_seeds(vec![seed]))
}

/// Joint law of the slices `X_tau(M_{tau+k-1})`, `tau = 0..=horizon`, under
/// the exact shuffle chain driven by `c` (size `horizon + k - 1`).
pub fn shuffle_slice_history(c: &Cascade, k: usize) -> Result<Law<Vec<Vec<usize>>>, HarnessError> {
    let mut law: BTreeMap<(Matching, Vec<Vec<usize>>), f64> =
        BTreeMap::from([((Matching::empty(), vec![(1..=k).collect()]), 1.0)]);
    for level in 1..=c.n() {
        let mut next = BTreeMap::new();
        for ((m, hist), p) in &law {
            for (succ, q) in shuffle_transition_distribution(m, c.level(level))? {
                let mut h = hist.clone();
                if level >= k {
                    h.push(vertical_slice(&succ, level + 1 - k)?);
                }
                *next.entry((succ, h)).or_insert(0.0) += p * q;
            }
        }
        law = next;
    }
    let mut out = Law::new();
    for ((_, h), p) in law {
        *out.entry(h).or_insert(0.0) += p;
    }
    Ok(out)
}

/// Joint law of the path positions `Pi(0), ..., Pi(horizon)` of the polymer
/// attached to the last column of `c`.
pub fn path_position_history(c: &Cascade, horizon: usize) -> Result<Law<Vec<Vec<usize>>>, HarnessError> {
    let poly = hybrid_polymer_exact(&vertical_polymer_weights(c, horizon)?)?;
    Ok(poly.pushforward(|t| {
        (0..=horizon)
            .map(|tau| {
                let mut pos = t.positions(tau);
                pos.sort_unstable();
                pos
            })
            .collect()
    }))
}

pub fn dynamic_slice(k: usize, horizon: usize, envs: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut rng = RngStream::new(seed, k as u64);
    let mut worst = 0.0f64;
    for _ in 0..envs {
        let c = random_cascade(horizon + k - 1, &mut rng)?;
        let chain = shuffle_slice_history(&c, k)?;
        let paths = path_position_history(&c, horizon)?;
        worst = worst.max(tv_distance(&chain, &paths));
    }
    Ok(TestReport::below(format!("dynamic-slice k={k} T={horizon}"), worst, 1e-9)
        .with_sizes(vec![envs])
        .with_seeds(vec![seed]))
}

fn edge_weight(rng: &mut RngStream) -> f64 {
    0.2 + 2.8 * rng.uniform()
}

/// A square (whites 0, 1; blacks 0, 1) with unit legs to outer vertices
/// black 2, white 2, black 3, white 3, and random edges elsewhere.
fn spider_instance(extra: usize, rng: &mut RngStream) -> BipartiteGraph {
    loop {
        let nw = 4 + extra;
        let mut g = BipartiteGraph::new(nw, nw);
        for (w, b) in [(0, 0), (1, 0), (1, 1), (0, 1)] {
            g.add_edge(w, b, edge_weight(rng)).expect("fresh edge");
        }
        for (w, b) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
            g.add_edge(w, b, 1.0).expect("fresh edge");
        }
        // neighbouring outer vertices must not already be adjacent
        let forbidden = [(2, 2), (2, 3), (3, 3), (3, 2)];
        for w in 2..nw {
            for b in 2..nw {
                if !forbidden.contains(&(w, b)) && rng.uniform() < 0.6 {
                    g.add_edge(w, b, edge_weight(rng)).expect("fresh edge");
                }
            }
        }
        if matches!(enumerate_matchings(&g), Ok(m) if m.matchings.len() >= 3) {
            return g;
        }
    }
}

fn random_graph(n: usize, rng: &mut RngStream) -> BipartiteGraph {
    loop {
        let mut g = BipartiteGraph::new(n, n);
        for w in 0..n {
            for b in 0..n {
                if rng.uniform() < 0.5 {
                    g.add_edge(w, b, edge_weight(rng)).expect("fresh edge");
                }
            }
        }
        if matches!(enumerate_matchings(&g), Ok(m) if m.matchings.len() >= 2) {
            return g;
        }
    }
}

/// Partition-function factor and measure coupling of the spider move.
pub fn spider_identity(trials: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut rng = RngStream::new(seed, 0);
    let square = [Vertex::White(0), Vertex::Black(0), Vertex::White(1), Vertex::Black(1)];
    let mut worst = 0.0f64;
    for t in 0..trials {
        let g = spider_instance(1 + t % 2, &mut rng);
        let before = enumerate_matchings(&g)?;
        let sm = spider_move(&g, square)?;
        let after = enumerate_matchings(&sm.graph)?;
        worst = worst.max((before.log_z - sm.log_factor - after.log_z).abs());
        let mut pushed = Law::new();
        for (m, p) in &before.matchings {
            for (m2, q) in sm.couple(m)? {
                *pushed.entry(m2).or_insert(0.0) += p * q;
            }
        }
        let target: Law<Vec<usize>> = after.matchings.iter().cloned().collect();
        worst = worst.max(tv_distance(&pushed, &target));
    }
    Ok(TestReport::below("spider-move", worst, EXACT_TOL)
        .with_sizes(vec![trials])
        .with_seeds(vec![seed]))
}

/// Vertex expansion keeps `Z` and maps matchings bijectively; contraction
/// undoes it.
pub fn expansion_identity(trials: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut rng = RngStream::new(seed, 1);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < trials {
        let g = random_graph(5, &mut rng);
        let idx = (rng.uniform() * 5.0) as usize % 5;
        let v = if done % 2 == 0 { Vertex::White(idx) } else { Vertex::Black(idx) };
        let inc = g.incident(v);
        if inc.len() < 2 {
            continue;
        }
        let moved: Vec<usize> = inc.iter().copied().filter(|_| rng.uniform() < 0.5).collect();
        let ex = vertex_expand(&g, v, &moved)?;
        let before = enumerate_matchings(&g)?;
        let after = enumerate_matchings(&ex.graph)?;
        worst = worst.max((before.log_z - after.log_z).abs());
        if before.matchings.len() != after.matchings.len() {
            worst = f64::INFINITY;
        }
        let image: Law<Vec<usize>> = before
            .matchings
            .iter()
            .map(|(m, p)| (ex.map_matching(m), *p))
            .collect();
        let target: Law<Vec<usize>> = after.matchings.iter().cloned().collect();
        worst = worst.max(tv_distance(&image, &target));
        if !vertex_contract(&ex.graph, v, ex.middle, ex.twin)?.same_as(&g, 0.0) {
            worst = f64::INFINITY;
        }
        done += 1;
    }
    Ok(TestReport::below("vertex-expansion", worst, EXACT_TOL)
        .with_sizes(vec![trials])
        .with_seeds(vec![seed]))
}

fn swap_instance(
    pendant: &[f64],
    first: impl FnOnce(&mut ColumnBuilder) -> Result<(), HarnessError>,
    beta2: &[f64],
    tail: &[Vec<f64>],
) -> Result<ColumnGraph, HarnessError> {
    let mut b = ColumnBuilder::new(pendant)?;
    b.block(1);
    first(&mut b)?;
    b.block(2);
    b.plus(beta2)?;
    for gamma in tail {
        b.minus(gamma)?;
    }
    Ok(b.finish()?)
}

/// Exchanging a `(+)`/`(-)` column pair with the updated weights keeps `Z`
/// and the law of all edges outside the pair.
pub fn column_swap_identity(max_height: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut rng = RngStream::new(seed, 2);
    let mut worst = 0.0f64;
    for m in 1..=max_height {
        let pendant: Vec<f64> = (0..m).map(|_| edge_weight(&mut rng)).collect();
        let beta: Vec<f64> = (0..m).map(|_| rng.open_uniform()).collect();
        let gamma: Vec<f64> = (0..m).map(|_| edge_weight(&mut rng)).collect();
        let beta2: Vec<f64> = (0..m).map(|_| rng.open_uniform()).collect();
        // balanced: as many (-)-columns as left pendants
        let tail: Vec<Vec<f64>> = (1..m)
            .map(|s| (0..=m - s).map(|_| edge_weight(&mut rng)).collect())
            .collect();
        let (gamma_hat, beta_hat) = vswap_update(&beta, &gamma)?;
        let g = swap_instance(&pendant, |b| {
            b.plus(&beta)?.minus(&gamma)?;
            Ok(())
        }, &beta2, &tail)?;
        let h = swap_instance(&pendant, |b| {
            b.minus_with(m - 1, |k| (1.0, 1.0, gamma_hat[k - 1]))?;
            b.plus_with(m - 1, |k| (1.0, beta_hat[k - 1], 1.0 - beta_hat[k - 1]))?;
            Ok(())
        }, &beta2, &tail)?;
        let outside = |cg: &ColumnGraph| -> Result<_, HarnessError> {
            let measure = enumerate_matchings(&cg.graph)?;
            let law = measure.pushforward(|mt| {
                mt.iter()
                    .map(|&e| cg.tags[e])
                    .filter(|t| t.block != 1)
                    .collect::<BTreeSet<_>>()
            });
            Ok((law, measure.log_z))
        };
        let (lg, zg) = outside(&g)?;
        let (lh, zh) = outside(&h)?;
        worst = worst.max((zg - zh).abs()).max(tv_distance(&lg, &lh));
    }
    Ok(TestReport::below("column-swap", worst, EXACT_TOL)
        .with_sizes(vec![max_height])
        .with_seeds(vec![seed]))
}

/// Largest deficit `1 - P(edge)` over the frozen edges of every swap graph.
pub fn frozen_edges(max_n: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut rng = RngStream::new(seed, 3);
    let mut worst = 0.0f64;
    let mut graphs = 0;
    for n in 1..=max_n {
        let c = random_cascade(n, &mut rng)?;
        for ell in 1..=n + 1 {
            for g in [build_vswap(&c, ell)?, build_hswap(&c, ell)?] {
                worst = worst.max(frozen_deficit(&g)?);
                graphs += 1;
            }
        }
    }
    Ok(TestReport::below("frozen-edges", worst, EXACT_TOL)
        .with_sizes(vec![graphs])
        .with_seeds(vec![seed]))
}

fn frozen_deficit(g: &SwapGraph) -> Result<f64, HarnessError> {
    let marg = enumerate_matchings(&g.graph)?.edge_marginals(g.graph.edges.len());
    Ok(g.frozen_edges().iter().map(|&e| (1.0 - marg[e]).abs()).fold(0.0, f64::max))
}

pub fn graph_transforms(seed: u64) -> Result<TestReport, HarnessError> {
    let parts = [
        spider_identity(10, seed)?,
        expansion_identity(10, seed)?,
        column_swap_identity(4, seed)?,
        frozen_edges(3, seed)?,
    ];
    Ok(all_of("graph-transforms", &parts))
}

/// Per doubling of the track label, the relative distance to the limit face
/// weights shrinks by a factor within `[0.4, 0.6]`. The statistic is the
/// largest distance of a ratio from 0.5.
pub fn fock_limit(param_sets: usize, n: usize, seed: u64) -> Result<TestReport, HarnessError> {
    let mut rng = RngStream::new(seed, 0);
    let mut worst = 0.0f64;
    for _ in 0..param_sets {
        let extent = n;
        let psi = (0..extent).map(|_| 0.5 + 1.5 * rng.uniform()).collect();
        let phi = (0..2 * extent + 1).map(|_| 0.5 + 1.5 * rng.uniform()).collect();
        let theta = (0..extent).map(|_| 0.6 * rng.uniform() - 0.3).collect();
        let p = ParamSet::new(psi, phi, -(extent as i64), theta)?;
        let lim = limit_face_weights(&p, n)?;
        for d in [1e2, 1e3, 1e4] {
            let e1 = fock_face_weights(&p, n, d)?.max_rel_diff(&lim);
            let e2 = fock_face_weights(&p, n, 2.0 * d)?.max_rel_diff(&lim);
            worst = worst.max((e2 / e1 - 0.5).abs());
        }
    }
    Ok(TestReport::below("fock-limit", worst, 0.1)
        .with_sizes(vec![param_sets])
        .with_seeds(vec![seed]))
}
