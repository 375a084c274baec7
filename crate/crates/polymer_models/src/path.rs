use serde::{Deserialize, Serialize};

use crate::PolymerError;

/// One step of a path on the hybrid digraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    /// `(x, y) -> (x + 1, y)`
    Right,
    /// `(x, y) -> (x + 1, y - 1)`, left half only
    DownRight,
    /// `(x, y) -> (x, y - 1)`, right half only
    Down,
}

impl Step {
    pub fn to_char(self) -> char {
        match self {
            Step::Right => 'R',
            Step::DownRight => 'S',
            Step::Down => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Step> {
        match c {
            'R' => Some(Step::Right),
            'S' => Some(Step::DownRight),
            'D' => Some(Step::Down),
            _ => None,
        }
    }

    pub fn apply(self, (x, y): (i64, i64)) -> (i64, i64) {
        match self {
            Step::Right => (x + 1, y),
            Step::DownRight => (x + 1, y - 1),
            Step::Down => (x, y - 1),
        }
    }
}

/// Vertex set of the hybrid digraph with `p` paths and `m` layers: columns
/// `x < 0` form the left half, `x >= 0` the right half.
pub fn in_support(p: usize, m: usize, (x, y): (i64, i64)) -> bool {
    let (p, m) = (p as i64, m as i64);
    if !(-m - p..=-1).contains(&y) {
        return false;
    }
    if x < 0 {
        x >= -m && x + y >= -m - p
    } else {
        x <= (p - 1).min(y + m + p)
    }
}

/// Steps leaving `v` that stay inside the support.
pub fn steps_from(p: usize, m: usize, v: (i64, i64)) -> impl Iterator<Item = Step> {
    let cand: &[Step] = if v.0 < 0 {
        &[Step::Right, Step::DownRight]
    } else {
        &[Step::Right, Step::Down]
    };
    cand.iter()
        .copied()
        .filter(move |s| in_support(p, m, s.apply(v)))
}

/// `p` nonintersecting paths, path `j` (1-based) running from `(-m, -j)` to
/// `(p - j, -m - j)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathTuple {
    pub p: usize,
    pub m: usize,
    pub paths: Vec<Vec<Step>>,
}

impl PathTuple {
    pub fn start(&self, j: usize) -> (i64, i64) {
        (-(self.m as i64), -(j as i64))
    }

    pub fn end(&self, j: usize) -> (i64, i64) {
        (self.p as i64 - j as i64, -(self.m as i64) - j as i64)
    }

    /// Vertices of path `j` (1-based), start included.
    pub fn vertices(&self, j: usize) -> Vec<(i64, i64)> {
        let mut v = self.start(j);
        let mut out = vec![v];
        for s in &self.paths[j - 1] {
            v = s.apply(v);
            out.push(v);
        }
        out
    }

    pub fn validate(&self) -> Result<(), PolymerError> {
        if self.paths.len() != self.p {
            return Err(PolymerError::InvalidPath(format!(
                "{} paths, expected {}",
                self.paths.len(),
                self.p
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for j in 1..=self.p {
            let mut v = self.start(j);
            for s in &self.paths[j - 1] {
                if !steps_from(self.p, self.m, v).any(|t| t == *s) {
                    return Err(PolymerError::InvalidPath(format!("path {j}: step {s:?} at {v:?}")));
                }
                v = s.apply(v);
            }
            if v != self.end(j) {
                return Err(PolymerError::InvalidPath(format!("path {j} ends at {v:?}")));
            }
            for u in self.vertices(j) {
                if !seen.insert(u) {
                    return Err(PolymerError::InvalidPath(format!("paths meet at {u:?}")));
                }
            }
        }
        Ok(())
    }

    /// `-y` of the first vertex of path `j` on the axis `x = 0`.
    pub fn axis_label(&self, j: usize) -> usize {
        let v = self
            .vertices(j)
            .into_iter()
            .find(|v| v.0 == 0)
            .expect("every path crosses x = 0");
        (-v.1) as usize
    }

    /// Axis labels of all paths, sorted.
    pub fn x_poly(&self) -> Vec<usize> {
        let mut out: Vec<usize> = (1..=self.p).map(|j| self.axis_label(j)).collect();
        out.sort_unstable();
        out
    }

    /// Label of path `j` at time `tau` in `0..=m`: `-y` at `x = -m + tau`,
    /// and the axis label at `tau = m`.
    pub fn position(&self, j: usize, tau: usize) -> usize {
        if tau == self.m {
            return self.axis_label(j);
        }
        let x = tau as i64 - self.m as i64;
        let v = self.vertices(j).into_iter().find(|v| v.0 == x).expect("left half is graded");
        (-v.1) as usize
    }

    /// Labels of all paths at time `tau`, top path first.
    pub fn positions(&self, tau: usize) -> Vec<usize> {
        (1..=self.p).map(|j| self.position(j, tau)).collect()
    }

    /// Per-path step strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.paths
            .iter()
            .map(|p| p.iter().map(|s| s.to_char()).collect())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_strings()).expect("strings serialize")
    }

    pub fn from_json(p: usize, m: usize, text: &str) -> Result<Self, PolymerError> {
        let rows: Vec<String> =
            serde_json::from_str(text).map_err(|e| PolymerError::InvalidPath(e.to_string()))?;
        let paths = rows
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| Step::from_char(c).ok_or_else(|| PolymerError::InvalidPath(format!("step {c:?}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let t = PathTuple { p, m, paths };
        t.validate()?;
        Ok(t)
    }

    /// Builds path `j` by following `next` from its start until it returns `None`.
    pub fn trace(
        p: usize,
        m: usize,
        mut next: impl FnMut((i64, i64)) -> Option<Step>,
    ) -> Result<Self, PolymerError> {
        let mut paths = Vec::with_capacity(p);
        for j in 1..=p {
            let mut v = (-(m as i64), -(j as i64));
            let mut steps = Vec::new();
            while let Some(s) = next(v) {
                steps.push(s);
                v = s.apply(v);
                if steps.len() > 4 * (m + p) {
                    return Err(PolymerError::InvalidPath("path does not terminate".into()));
                }
            }
            paths.push(steps);
        }
        let t = PathTuple { p, m, paths };
        t.validate()?;
        Ok(t)
    }
}
