use serde::{Deserialize, Serialize};

use crate::PolymerError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Move {
    Right,
    Up,
}

/// Up-right lattice path from `(0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePath {
    pub moves: Vec<Move>,
}

impl LatticePath {
    pub fn points(&self) -> Vec<(i64, i64)> {
        let mut p = (0, 0);
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(p);
        for mv in &self.moves {
            match mv {
                Move::Right => p.0 += 1,
                Move::Up => p.1 += 1,
            }
            out.push(p);
        }
        out
    }

    pub fn end(&self) -> (i64, i64) {
        let r = self.moves.iter().filter(|m| **m == Move::Right).count() as i64;
        (r, self.moves.len() as i64 - r)
    }

    pub fn to_string(&self) -> String {
        self.moves
            .iter()
            .map(|m| if *m == Move::Right { 'R' } else { 'U' })
            .collect()
    }

    pub fn from_str(s: &str) -> Result<Self, PolymerError> {
        let moves = s
            .chars()
            .map(|c| match c {
                'R' => Ok(Move::Right),
                'U' => Ok(Move::Up),
                _ => Err(PolymerError::InvalidPath(format!("move {c:?}"))),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { moves })
    }

    /// All paths from `(0, 0)` to `(m, n)`.
    pub fn all(m: usize, n: usize) -> Vec<LatticePath> {
        fn go(r: usize, u: usize, cur: &mut Vec<Move>, out: &mut Vec<LatticePath>) {
            if r == 0 && u == 0 {
                out.push(LatticePath { moves: cur.clone() });
                return;
            }
            if r > 0 {
                cur.push(Move::Right);
                go(r - 1, u, cur, out);
                cur.pop();
            }
            if u > 0 {
                cur.push(Move::Up);
                go(r, u - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(m, n, &mut Vec::new(), &mut out);
        out
    }
}

/// Antidiagonal crossing and the horizontal/vertical extents of a path on
/// one row and one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingStats {
    pub x_mid: i64,
    /// Leftmost and rightmost `x` on row `y = row`.
    pub v0: i64,
    pub v1: i64,
    /// Lowest and highest `y` on column `x = col`.
    pub w0: i64,
    pub w1: i64,
}

/// The `x` of the unique path point on `x + y = n`.
pub fn x_mid(path: &LatticePath, n: i64) -> Result<i64, PolymerError> {
    let (em, en) = path.end();
    if n < 0 || n > em.min(en) {
        return Err(PolymerError::Range(format!("antidiagonal {n} for endpoint ({em}, {en})")));
    }
    Ok(path
        .points()
        .into_iter()
        .find(|p| p.0 + p.1 == n)
        .expect("up-right path meets every antidiagonal up to its end")
        .0)
}

pub fn crossings(path: &LatticePath, n: i64, row: i64, col: i64) -> Result<CrossingStats, PolymerError> {
    let (em, en) = path.end();
    if !(0..=en).contains(&row) || !(0..=em).contains(&col) {
        return Err(PolymerError::Range(format!("row {row} / column {col} outside ({em}, {en})")));
    }
    let pts = path.points();
    let xs = pts.iter().filter(|p| p.1 == row).map(|p| p.0);
    let ys = pts.iter().filter(|p| p.0 == col).map(|p| p.1);
    Ok(CrossingStats {
        x_mid: x_mid(path, n)?,
        v0: xs.clone().min().expect("row visited"),
        v1: xs.max().expect("row visited"),
        w0: ys.clone().min().expect("column visited"),
        w1: ys.max().expect("column visited"),
    })
}
