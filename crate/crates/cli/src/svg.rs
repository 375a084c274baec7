use std::collections::BTreeSet;
use std::fmt::Write;

use aztec_model::{black_position, white_position, Dir, Matching};

use crate::error::{config, CliError};

const SCALE: i64 = 10;
const PAD: i64 = 2;

pub fn colour(dir: Dir) -> &'static str {
    match dir {
        Dir::DL => "#D62728",
        Dir::DR => "#2CA02C",
        Dir::UR => "#1F77B4",
        Dir::UL => "#FFD700",
    }
}

/// Matched edges keyed by white vertex and direction.
fn edge_set(m: &Matching) -> BTreeSet<((usize, usize), Dir)> {
    m.edges().into_iter().map(|e| (e.white, e.dir)).collect()
}

fn document(n: usize, edges: impl IntoIterator<Item = ((usize, usize), Dir)>) -> String {
    // diamond spans x in [1-n, n+1], y in [-n, n] before scaling
    let n_i = n as i64;
    let (x0, y0) = ((1 - n_i) * SCALE - PAD, -n_i * SCALE - PAD);
    let (w, h) = (2 * n_i * SCALE + 2 * PAD, 2 * n_i * SCALE + 2 * PAD);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0} {y0} {w} {h}" width="{w}" height="{h}">"#
    );
    let _ = writeln!(s, r#"<g stroke-width="3" stroke-linecap="round">"#);
    for ((l, k), dir) in edges {
        let (i, j) = dir.black_of(n, l, k).expect("edge of a valid matching");
        let (wx, wy) = white_position(n, l, k);
        let (bx, by) = black_position(n, i, j);
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{}"/>"#,
            wx * SCALE,
            -wy * SCALE,
            bx * SCALE,
            -by * SCALE,
            colour(dir)
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

pub fn render(m: &Matching) -> String {
    document(m.n, edge_set(m))
}

/// Edges in exactly one of the two matchings.
pub fn render_double(a: &Matching, b: &Matching) -> Result<String, CliError> {
    if a.n != b.n {
        return Err(config(format!("matching sizes differ: {} and {}", a.n, b.n)));
    }
    let (ea, eb) = (edge_set(a), edge_set(b));
    Ok(document(a.n, ea.symmetric_difference(&eb).copied()))
}
