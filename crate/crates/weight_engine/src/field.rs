use dist_core::RngStream;
use serde::{Deserialize, Serialize};

use crate::{sample_weight_window, ParamSet, WeightError, WeightWindow};

/// Weights `a_{i,j}`, `b_{i,j}` (1-based, `i, j <= level`) of a size-`level`
/// Aztec diamond, row-major in `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightField {
    pub level: usize,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl WeightField {
    pub fn new(level: usize, a: Vec<f64>, b: Vec<f64>) -> Result<Self, WeightError> {
        let want = level * level;
        if a.len() != want || b.len() != want {
            return Err(WeightError::Length(format!(
                "level {level} needs {want} entries, got a={}, b={}",
                a.len(),
                b.len()
            )));
        }
        if a.iter().chain(&b).any(|x| !(x.is_finite() && *x > 0.0)) {
            return Err(WeightError::Invalid("weights must be positive and finite".into()));
        }
        Ok(Self { level, a, b })
    }

    pub fn constant(level: usize, a: f64, b: f64) -> Self {
        Self {
            level,
            a: vec![a; level * level],
            b: vec![b; level * level],
        }
    }

    /// Build from `[i][j]` nested rows.
    pub fn from_rows(a: &[Vec<f64>], b: &[Vec<f64>]) -> Result<Self, WeightError> {
        let n = a.len();
        Self::new(n, a.concat(), b.concat())
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> f64 {
        self.a[(i - 1) * self.level + (j - 1)]
    }

    #[inline]
    pub fn b(&self, i: usize, j: usize) -> f64 {
        self.b[(i - 1) * self.level + (j - 1)]
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain numbers serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, WeightError> {
        let w: Self = serde_json::from_str(text).map_err(|e| WeightError::Invalid(e.to_string()))?;
        Self::new(w.level, w.a, w.b)
    }

    pub fn as_window(&self) -> WeightWindow {
        WeightWindow {
            level: self.level as i64,
            i0: 1,
            j0: 1,
            rows: self.level,
            cols: self.level,
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }

    /// The level `n-1` field; empty at level 0 when `n == 1`.
    pub fn downshuffle(&self) -> WeightField {
        if self.level <= 1 {
            return WeightField {
                level: 0,
                a: Vec::new(),
                b: Vec::new(),
            };
        }
        let w = self.as_window().downshuffle().expect("level >= 2");
        WeightField {
            level: self.level - 1,
            a: w.a,
            b: w.b,
        }
    }
}

pub fn sample_weight_field(
    params: &ParamSet,
    n: usize,
    rng: &mut RngStream,
) -> Result<WeightField, WeightError> {
    params.check_level(n)?;
    let w = sample_weight_window(params, n as i64, 1..=n as i64, 1..=n as i64, rng)?;
    Ok(WeightField {
        level: n,
        a: w.a,
        b: w.b,
    })
}

/// Fields at levels `1..=n` obtained by repeated downshuffle.
#[derive(Debug, Clone, PartialEq)]
pub struct Cascade {
    levels: Vec<WeightField>,
}

impl Cascade {
    /// Size of the top field.
    pub fn n(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, k: usize) -> &WeightField {
        &self.levels[k - 1]
    }

    pub fn top(&self) -> &WeightField {
        self.levels.last().expect("nonempty cascade")
    }

    /// Levels in decreasing order `n, n-1, ..., 1`.
    pub fn iter_down(&self) -> impl Iterator<Item = &WeightField> {
        self.levels.iter().rev()
    }
}

pub fn cascade(w: &WeightField) -> Cascade {
    let mut levels = Vec::with_capacity(w.level);
    let mut cur = w.clone();
    while cur.level > 0 {
        let next = cur.downshuffle();
        levels.push(cur);
        cur = next;
    }
    levels.reverse();
    Cascade { levels }
}

/// `log Z_n = sum_k sum_{j <= k} log(a^{[k]}_{1,j} + b^{[k]}_{1,j})`.
pub fn partition_product(c: &Cascade) -> f64 {
    c.levels
        .iter()
        .map(|f| (1..=f.level).map(|j| (f.a(1, j) + f.b(1, j)).ln()).sum::<f64>())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_downshuffle_example() {
        let w = WeightField::from_rows(
            &[vec![1.0, 1.0], vec![2.0, 1.0]],
            &[vec![1.0, 3.0], vec![2.0, 1.0]],
        )
        .unwrap();
        let d = w.downshuffle();
        assert_eq!(d.level, 1);
        assert!((d.a(1, 1) - 2.0).abs() < 1e-15);
        assert!((d.b(1, 1) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn cascade_shapes_and_constant() {
        let w = WeightField::constant(4, 0.3, 2.0);
        let c = cascade(&w);
        assert_eq!(c.n(), 4);
        for k in 1..=4 {
            let f = c.level(k);
            assert_eq!(f.level, k);
            assert_eq!(f.a.len(), k * k);
            assert!(f.a.iter().all(|&x| (x - 0.3).abs() < 1e-14));
            assert!(f.b.iter().all(|&x| (x - 2.0).abs() < 1e-14));
        }
        assert_eq!(cascade(&WeightField::constant(1, 1.0, 1.0)).n(), 1);
    }

    #[test]
    fn partition_product_small() {
        let c1 = cascade(&WeightField::constant(1, 1.0, 1.0));
        assert!((partition_product(&c1) - 2f64.ln()).abs() < 1e-15);
        let c2 = cascade(&WeightField::constant(2, 1.0, 1.0));
        assert!((partition_product(&c2) - 3.0 * 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn json_is_bit_exact() {
        let w = WeightField::new(2, vec![0.1, 1e-300, 3.5, 7.0], vec![1.0 / 3.0, 2.0, 5.0, 9e10])
            .unwrap();
        assert_eq!(WeightField::from_json(&w.to_json()).unwrap(), w);
    }
}
