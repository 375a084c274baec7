use serde::{Deserialize, Serialize};

use crate::WeightError;

/// Smallest Gamma shape accepted for linear-space weight fields.
pub const MIN_LINEAR_SHAPE: f64 = 0.05;

/// Parameter sequences `psi_j` (j >= 1), `phi_j` (j from `phi_min_index`),
/// `theta_i` (i >= 1) and scales `s_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    pub psi: Vec<f64>,
    pub phi: Vec<f64>,
    pub theta: Vec<f64>,
    #[serde(default)]
    pub s: Vec<f64>,
    pub phi_min_index: i64,
}

impl ParamSet {
    pub fn new(
        psi: Vec<f64>,
        phi: Vec<f64>,
        phi_min_index: i64,
        theta: Vec<f64>,
    ) -> Result<Self, WeightError> {
        let s = vec![1.0; theta.len()];
        let p = Self {
            psi,
            phi,
            theta,
            s,
            phi_min_index,
        };
        p.validate()?;
        Ok(p)
    }

    /// `psi = alpha`, `phi = beta`, `theta = 0`, covering indices up to `extent`
    /// in every direction (phi over `-extent..=extent`).
    pub fn homogeneous(alpha: f64, beta: f64, extent: usize) -> Result<Self, WeightError> {
        let e = extent.max(1);
        Self::new(vec![alpha; e], vec![beta; 2 * e + 1], -(e as i64), vec![0.0; e])
    }

    pub fn from_json(text: &str) -> Result<Self, WeightError> {
        let mut p: Self =
            serde_json::from_str(text).map_err(|e| WeightError::Invalid(e.to_string()))?;
        if p.s.is_empty() {
            p.s = vec![1.0; p.theta.len()];
        }
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain numbers serialize")
    }

    pub fn validate(&self) -> Result<(), WeightError> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        if !(finite(&self.psi) && finite(&self.phi) && finite(&self.theta) && finite(&self.s)) {
            return Err(WeightError::Invalid("non-finite entry".into()));
        }
        if self.s.iter().any(|&x| x <= 0.0) {
            return Err(WeightError::Invalid("scales must be positive".into()));
        }
        if self.s.len() != self.theta.len() {
            return Err(WeightError::Invalid("s and theta lengths differ".into()));
        }
        Ok(())
    }

    pub fn psi(&self, j: i64) -> Result<f64, WeightError> {
        lookup(&self.psi, j - 1, "psi", j)
    }

    pub fn phi(&self, j: i64) -> Result<f64, WeightError> {
        lookup(&self.phi, j - self.phi_min_index, "phi", j)
    }

    pub fn theta(&self, i: i64) -> Result<f64, WeightError> {
        lookup(&self.theta, i - 1, "theta", i)
    }

    pub fn phi_max_index(&self) -> i64 {
        self.phi_min_index + self.phi.len() as i64 - 1
    }

    /// Shape of `a_{i,j}` (any level).
    pub fn a_shape(&self, i: i64, j: i64) -> Result<f64, WeightError> {
        let v = self.psi(j)? + self.theta(i)?;
        positive(v, "a", i, j)
    }

    /// Shape of `b_{i,j}` at the given level.
    pub fn b_shape(&self, i: i64, j: i64, level: i64) -> Result<f64, WeightError> {
        let v = self.phi(j - level)? - self.theta(i)?;
        positive(v, "b", i, j)
    }

    /// Checks every shape needed by a level-`n` field.
    pub fn check_level(&self, n: usize) -> Result<(), WeightError> {
        let n = n as i64;
        for i in 1..=n {
            for j in 1..=n {
                self.a_shape(i, j)?;
                self.b_shape(i, j, n)?;
            }
        }
        Ok(())
    }

    /// Multiplies psi, phi and theta by `t` (temperature scaling).
    pub fn scaled(&self, t: f64) -> Self {
        let mul = |v: &[f64]| v.iter().map(|x| x * t).collect::<Vec<_>>();
        Self {
            psi: mul(&self.psi),
            phi: mul(&self.phi),
            theta: mul(&self.theta),
            s: self.s.clone(),
            phi_min_index: self.phi_min_index,
        }
    }
}

fn lookup(v: &[f64], k: i64, name: &'static str, index: i64) -> Result<f64, WeightError> {
    if k < 0 || k as usize >= v.len() {
        return Err(WeightError::OutOfWindow { name, index });
    }
    Ok(v[k as usize])
}

fn positive(v: f64, what: &'static str, i: i64, j: i64) -> Result<f64, WeightError> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(WeightError::Inadmissible {
            what,
            i,
            j,
            value: v,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn homogeneous_windows() {
        let p = ParamSet::homogeneous(0.2, 0.25, 4).unwrap();
        assert_eq!(p.psi(4).unwrap(), 0.2);
        assert!(p.psi(5).is_err());
        assert_eq!(p.phi(-4).unwrap(), 0.25);
        assert_eq!(p.phi(4).unwrap(), 0.25);
        assert!(p.check_level(4).is_ok());
        assert!(p.check_level(5).is_err());
    }

    #[test]
    fn inadmissible_theta() {
        let p = ParamSet::new(vec![1.0], vec![1.0], 0, vec![1.5]).unwrap();
        assert!(matches!(p.check_level(1), Err(WeightError::Inadmissible { .. })));
    }

    #[test]
    fn json_round_trip() {
        let p = ParamSet::new(vec![1.0, 2.0], vec![0.5, 0.7], -1, vec![0.1, -0.1]).unwrap();
        let q = ParamSet::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
        let r = ParamSet::from_json(r#"{"psi":[1],"phi":[1],"theta":[0],"phi_min_index":0}"#)
            .unwrap();
        assert_eq!(r.s, vec![1.0]);
    }
}
