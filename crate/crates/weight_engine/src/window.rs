use dist_core::{GammaSampler, RngStream};

use crate::{ParamSet, WeightError, MIN_LINEAR_SHAPE};

/// A rectangular patch of level-`level` weights covering rows
/// `i0..i0+rows` and columns `j0..j0+cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightWindow {
    pub level: i64,
    pub i0: i64,
    pub j0: i64,
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl WeightWindow {
    pub fn new(
        level: i64,
        i0: i64,
        j0: i64,
        rows: usize,
        cols: usize,
        a: Vec<f64>,
        b: Vec<f64>,
    ) -> Result<Self, WeightError> {
        if a.len() != rows * cols || b.len() != rows * cols {
            return Err(WeightError::Length(format!(
                "expected {} entries, got a={}, b={}",
                rows * cols,
                a.len(),
                b.len()
            )));
        }
        Ok(Self {
            level,
            i0,
            j0,
            rows,
            cols,
            a,
            b,
        })
    }

    pub fn constant(level: i64, i0: i64, j0: i64, rows: usize, cols: usize, a: f64, b: f64) -> Self {
        Self {
            level,
            i0,
            j0,
            rows,
            cols,
            a: vec![a; rows * cols],
            b: vec![b; rows * cols],
        }
    }

    #[inline]
    fn idx(&self, i: i64, j: i64) -> usize {
        debug_assert!(self.contains(i, j), "({i},{j}) outside window");
        (i - self.i0) as usize * self.cols + (j - self.j0) as usize
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        i >= self.i0
            && j >= self.j0
            && ((i - self.i0) as usize) < self.rows
            && ((j - self.j0) as usize) < self.cols
    }

    pub fn i1(&self) -> i64 {
        self.i0 + self.rows as i64 - 1
    }

    pub fn j1(&self) -> i64 {
        self.j0 + self.cols as i64 - 1
    }

    #[inline]
    pub fn a(&self, i: i64, j: i64) -> f64 {
        self.a[self.idx(i, j)]
    }

    #[inline]
    pub fn b(&self, i: i64, j: i64) -> f64 {
        self.b[self.idx(i, j)]
    }

    /// One step down: level `L` on `[i0..=i1] x [j0..=j1]` to level `L-1` on
    /// `[i0..i1] x [j0..j1]` (last row and column dropped).
    pub fn downshuffle(&self) -> Result<Self, WeightError> {
        if self.rows < 2 || self.cols < 2 {
            return Err(WeightError::WindowTooSmall(self.rows, self.cols));
        }
        let s: Vec<f64> = self.a.iter().zip(&self.b).map(|(x, y)| x + y).collect();
        let (r, c) = (self.rows - 1, self.cols - 1);
        let mut a = Vec::with_capacity(r * c);
        let mut b = Vec::with_capacity(r * c);
        let w = self.cols;
        for ri in 0..r {
            for ci in 0..c {
                let here = ri * w + ci;
                let below = here + w;
                a.push(self.a[here] / s[here] * s[below]);
                b.push(self.b[here + 1] / s[here + 1] * s[below + 1]);
            }
        }
        Ok(Self {
            level: self.level - 1,
            i0: self.i0,
            j0: self.j0,
            rows: r,
            cols: c,
            a,
            b,
        })
    }

    /// One step up: level `L` on `[i0..=i1] x [j0..=j1]` to level `L+1` on
    /// `[i0+1..=i1] x [j0+1..=j1]`.
    pub fn upshuffle(&self) -> Result<Self, WeightError> {
        if self.rows < 2 || self.cols < 2 {
            return Err(WeightError::WindowTooSmall(self.rows, self.cols));
        }
        let (r, c) = (self.rows - 1, self.cols - 1);
        let mut a = Vec::with_capacity(r * c);
        let mut b = Vec::with_capacity(r * c);
        let w = self.cols;
        for ri in 1..=r {
            for ci in 1..=c {
                let here = ri * w + ci;
                let left = here - 1;
                let up = here - w;
                let upleft = up - 1;
                let denom = self.a[here] + self.b[left];
                let mult = (self.a[up] + self.b[upleft]) / denom;
                a.push(self.a[here] * mult);
                b.push(self.b[left] * mult);
            }
        }
        Ok(Self {
            level: self.level + 1,
            i0: self.i0 + 1,
            j0: self.j0 + 1,
            rows: r,
            cols: c,
            a,
            b,
        })
    }

    /// Sub-window on `[i0..=i1] x [j0..=j1]`.
    pub fn restrict(&self, i0: i64, i1: i64, j0: i64, j1: i64) -> Result<Self, WeightError> {
        if !(self.contains(i0, j0) && self.contains(i1, j1)) || i1 < i0 || j1 < j0 {
            return Err(WeightError::OutOfWindow {
                name: "window",
                index: i0,
            });
        }
        let (rows, cols) = ((i1 - i0 + 1) as usize, (j1 - j0 + 1) as usize);
        let mut a = Vec::with_capacity(rows * cols);
        let mut b = Vec::with_capacity(rows * cols);
        for i in i0..=i1 {
            for j in j0..=j1 {
                a.push(self.a(i, j));
                b.push(self.b(i, j));
            }
        }
        Ok(Self {
            level: self.level,
            i0,
            j0,
            rows,
            cols,
            a,
            b,
        })
    }
}

/// Independent `a_{i,j} ~ Gamma(psi_j + theta_i)`, `b_{i,j} ~ Gamma(phi_{j-level} - theta_i)`
/// over the given index rectangle.
pub fn sample_weight_window(
    params: &ParamSet,
    level: i64,
    rows: std::ops::RangeInclusive<i64>,
    cols: std::ops::RangeInclusive<i64>,
    rng: &mut RngStream,
) -> Result<WeightWindow, WeightError> {
    let (i0, i1) = (*rows.start(), *rows.end());
    let (j0, j1) = (*cols.start(), *cols.end());
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in i0..=i1 {
        for j in j0..=j1 {
            let sa = params.a_shape(i, j)?;
            let sb = params.b_shape(i, j, level)?;
            for sh in [sa, sb] {
                if sh < MIN_LINEAR_SHAPE {
                    return Err(WeightError::ShapeTooSmall(sh, MIN_LINEAR_SHAPE));
                }
            }
            a.push(GammaSampler::unit(sa).sample(rng));
            b.push(GammaSampler::unit(sb).sample(rng));
        }
    }
    WeightWindow::new(
        level,
        i0,
        j0,
        (i1 - i0 + 1).max(0) as usize,
        (j1 - j0 + 1).max(0) as usize,
        a,
        b,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_fixed_point() {
        let w = WeightWindow::constant(3, 1, 0, 4, 5, 0.7, 1.9);
        let up = w.upshuffle().unwrap();
        assert_eq!((up.i0, up.j0, up.rows, up.cols, up.level), (2, 1, 3, 4, 4));
        assert!(up.a.iter().all(|&x| (x - 0.7).abs() < 1e-15));
        assert!(up.b.iter().all(|&x| (x - 1.9).abs() < 1e-15));
        let down = w.downshuffle().unwrap();
        assert!(down.a.iter().all(|&x| (x - 0.7).abs() < 1e-15));
    }

    #[test]
    fn too_small() {
        let w = WeightWindow::constant(1, 1, 1, 1, 3, 1.0, 1.0);
        assert!(w.upshuffle().is_err());
        assert!(w.downshuffle().is_err());
    }
}
