use serde::{Deserialize, Serialize};
use weight_engine::WeightField;

use crate::AztecError;

/// Direction from a white vertex to its partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Dir {
    /// Northwest edge to `bk(l, k)`, weight `a_{l,k}`.
    DL,
    /// Southwest edge to `bk(l, k-1)`, weight `b_{l,k-1}`.
    UL,
    /// Northeast edge to `bk(l+1, k)`, weight 1.
    DR,
    /// Southeast edge to `bk(l+1, k-1)`, weight 1.
    UR,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::DL, Dir::UL, Dir::DR, Dir::UR];

    pub fn to_char(self) -> char {
        match self {
            Dir::DL => 'L',
            Dir::UL => 'U',
            Dir::UR => 'R',
            Dir::DR => 'D',
        }
    }

    pub fn from_char(c: char) -> Option<Dir> {
        match c {
            'L' => Some(Dir::DL),
            'U' => Some(Dir::UL),
            'R' => Some(Dir::UR),
            'D' => Some(Dir::DR),
            _ => None,
        }
    }

    /// The black partner of white `w(l, k)`, if that edge exists in a size-`n` diamond.
    pub fn black_of(self, n: usize, l: usize, k: usize) -> Option<(usize, usize)> {
        match self {
            Dir::DL if k <= n => Some((l, k)),
            Dir::UL if k >= 2 => Some((l, k - 1)),
            Dir::DR if k <= n => Some((l + 1, k)),
            Dir::UR if k >= 2 => Some((l + 1, k - 1)),
            _ => None,
        }
    }
}

/// Planar position of `bk(i, j)` in a size-`n` diamond.
pub fn black_position(n: usize, i: usize, j: usize) -> (i64, i64) {
    let (n, i, j) = (n as i64, i as i64, j as i64);
    (2 * i - n - 1, n + 1 - 2 * j)
}

/// Planar position of `w(l, m)` in a size-`n` diamond.
pub fn white_position(n: usize, l: usize, m: usize) -> (i64, i64) {
    let (n, l, m) = (n as i64, l as i64, m as i64);
    (2 * l - n, n + 2 - 2 * m)
}

/// One matched edge: white `w(l, k)`, its direction and black partner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeRef {
    pub white: (usize, usize),
    pub black: (usize, usize),
    pub dir: Dir,
}

/// A perfect matching of the size-`n` Aztec diamond.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching {
    pub n: usize,
    pub dir: Vec<Dir>,
}

impl Matching {
    /// Checked constructor.
    pub fn new(n: usize, dir: Vec<Dir>) -> Result<Self, AztecError> {
        let m = Self { n, dir };
        m.check()?;
        Ok(m)
    }

    /// The empty matching of the size-0 diamond.
    pub fn empty() -> Self {
        Self {
            n: 0,
            dir: Vec::new(),
        }
    }

    /// Build from per-column rows `rows[l-1][k-1]`.
    pub fn from_rows(rows: &[Vec<Dir>]) -> Result<Self, AztecError> {
        Self::new(rows.len(), rows.concat())
    }

    #[inline]
    pub fn index(n: usize, l: usize, k: usize) -> usize {
        (l - 1) * (n + 1) + (k - 1)
    }

    #[inline]
    pub fn get(&self, l: usize, k: usize) -> Dir {
        self.dir[Self::index(self.n, l, k)]
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    pub fn check(&self) -> Result<(), AztecError> {
        let n = self.n;
        if self.dir.len() != n * (n + 1) {
            return Err(AztecError::Invalid(format!(
                "expected {} entries, got {}",
                n * (n + 1),
                self.dir.len()
            )));
        }
        let mut covered = vec![false; (n + 1) * n];
        for l in 1..=n {
            for k in 1..=n + 1 {
                let d = self.get(l, k);
                let (i, j) = d.black_of(n, l, k).ok_or_else(|| {
                    AztecError::Invalid(format!("w({l},{k}) has no {d:?} edge"))
                })?;
                let slot = &mut covered[(i - 1) * n + (j - 1)];
                if *slot {
                    return Err(AztecError::Invalid(format!("bk({i},{j}) covered twice")));
                }
                *slot = true;
            }
        }
        // |whites| == |blacks| so no double cover means perfect
        Ok(())
    }

    pub fn edges(&self) -> Vec<EdgeRef> {
        let mut out = Vec::with_capacity(self.dir.len());
        for l in 1..=self.n {
            for k in 1..=self.n + 1 {
                let dir = self.get(l, k);
                let black = dir.black_of(self.n, l, k).expect("valid matching");
                out.push(EdgeRef {
                    white: (l, k),
                    black,
                    dir,
                });
            }
        }
        out
    }

    /// `sum log a` over DL whites plus `sum log b` over UL whites.
    pub fn log_weight(&self, w: &WeightField) -> Result<f64, AztecError> {
        self.check()?;
        if w.level != self.n {
            return Err(AztecError::LevelMismatch {
                got: w.level,
                want: self.n,
            });
        }
        let mut s = 0.0;
        for l in 1..=self.n {
            for k in 1..=self.n + 1 {
                match self.get(l, k) {
                    Dir::DL => s += w.a(l, k).ln(),
                    Dir::UL => s += w.b(l, k - 1).ln(),
                    _ => {}
                }
            }
        }
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("aztec n={}\n", self.n);
        for l in 1..=self.n {
            s.extend((1..=self.n + 1).map(|k| self.get(l, k).to_char()));
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, AztecError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| AztecError::Parse("empty input".into()))?;
        let n: usize = header
            .strip_prefix("aztec n=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| AztecError::Parse(format!("bad header {header:?}")))?;
        let mut dir = Vec::with_capacity(n * (n + 1));
        for (row, line) in lines.enumerate() {
            if line.chars().count() != n + 1 {
                return Err(AztecError::Parse(format!("row {} has wrong length", row + 1)));
            }
            for c in line.chars() {
                dir.push(Dir::from_char(c).ok_or_else(|| AztecError::Parse(format!("bad symbol {c:?}")))?);
            }
        }
        Self::new(n, dir)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

/// `log` weight of a matching; convenience free function.
pub fn matching_weight(m: &Matching, w: &WeightField) -> Result<f64, AztecError> {
    m.log_weight(w)
}
