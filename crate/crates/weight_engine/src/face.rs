use crate::{ParamSet, WeightError};

/// Face weights of a size-`n` diamond: `even` is `n x n` (faces between the
/// black vertices `bk(i,j)` and `bk(i+1,j)`), `odd` is `(n-1) x (n-1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceWeightGrid {
    pub n: usize,
    pub even: Vec<f64>,
    pub odd: Vec<f64>,
}

impl FaceWeightGrid {
    pub fn even(&self, i: usize, j: usize) -> f64 {
        self.even[(i - 1) * self.n + (j - 1)]
    }

    pub fn odd(&self, i: usize, j: usize) -> f64 {
        self.odd[(i - 1) * (self.n - 1) + (j - 1)]
    }

    /// Largest relative deviation from another grid of the same size.
    pub fn max_rel_diff(&self, other: &FaceWeightGrid) -> f64 {
        self.even
            .iter()
            .zip(&other.even)
            .chain(self.odd.iter().zip(&other.odd))
            .map(|(x, y)| ((x - y) / y).abs())
            .fold(0.0, f64::max)
    }
}

struct Labels {
    psi: Vec<f64>,
    phi: Vec<f64>,
    theta: Vec<f64>,
}

fn labels(params: &ParamSet, n: usize) -> Result<Labels, WeightError> {
    let n_i = n as i64;
    let psi = (1..=n_i).map(|j| params.psi(j)).collect::<Result<Vec<_>, _>>()?;
    let phi = (1..=n_i).map(|j| params.phi(j - n_i)).collect::<Result<Vec<_>, _>>()?;
    let theta = (1..=n_i).map(|i| params.theta(i)).collect::<Result<Vec<_>, _>>()?;
    for i in 0..n {
        for j in 0..n {
            if psi[j] + theta[i] <= 0.0 || phi[j] - theta[i] <= 0.0 {
                return Err(WeightError::Inadmissible {
                    what: "face",
                    i: i as i64 + 1,
                    j: j as i64 + 1,
                    value: (psi[j] + theta[i]).min(phi[j] - theta[i]),
                });
            }
        }
    }
    Ok(Labels { psi, phi, theta })
}

/// The deterministic limit face weights.
pub fn limit_face_weights(params: &ParamSet, n: usize) -> Result<FaceWeightGrid, WeightError> {
    let l = labels(params, n)?;
    let mut even = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            even.push((l.psi[j] + l.theta[i]) / (l.phi[j] - l.theta[i]));
        }
    }
    let mut odd = Vec::with_capacity((n.max(1) - 1).pow(2));
    for i in 0..n.saturating_sub(1) {
        for j in 0..n - 1 {
            odd.push((l.phi[j] - l.theta[i + 1]) / (l.psi[j + 1] + l.theta[i + 1]));
        }
    }
    Ok(FaceWeightGrid { n, even, odd })
}

/// Fock-type face weights with the extra track label `delta`, which must
/// exceed every `phi_{j-n}`.
pub fn fock_face_weights(
    params: &ParamSet,
    n: usize,
    delta: f64,
) -> Result<FaceWeightGrid, WeightError> {
    let l = labels(params, n)?;
    let max_phi = l.phi.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(delta > max_phi) {
        return Err(WeightError::Ordering(format!(
            "delta = {delta} must exceed max phi = {max_phi}"
        )));
    }
    let mut even = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let num = (l.theta[i] + l.psi[j]) * (delta - l.phi[j]);
            let den = (delta + l.psi[j]) * (l.phi[j] - l.theta[i]);
            even.push(num / den);
        }
    }
    let mut odd = Vec::with_capacity((n.max(1) - 1).pow(2));
    for i in 0..n.saturating_sub(1) {
        for j in 0..n - 1 {
            let num = (l.phi[j] - l.theta[i + 1]) * (delta + l.psi[j + 1]);
            let den = (delta - l.phi[j]) * (l.theta[i + 1] + l.psi[j + 1]);
            odd.push(num / den);
        }
    }
    Ok(FaceWeightGrid { n, even, odd })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_delta_matches_limit() {
        let p = ParamSet::new(vec![1.0; 3], vec![2.0; 3], -2, vec![0.0; 3]).unwrap();
        let f = fock_face_weights(&p, 3, 1e6).unwrap();
        let l = limit_face_weights(&p, 3).unwrap();
        assert!((l.even(1, 1) - 0.5).abs() < 1e-15);
        assert!(((f.even(2, 3) - 0.5) / 0.5).abs() < 1e-5);
        assert!(f.max_rel_diff(&l) < 1e-5);
    }

    #[test]
    fn even_limit_without_theta() {
        let p = ParamSet::new(vec![1.0, 3.0], vec![2.0, 5.0], -1, vec![0.0, 0.0]).unwrap();
        let l = limit_face_weights(&p, 2).unwrap();
        assert!((l.even(1, 2) - 3.0 / 5.0).abs() < 1e-15);
        assert!((l.even(2, 1) - 1.0 / 2.0).abs() < 1e-15);
    }

    #[test]
    fn ordering_enforced() {
        let p = ParamSet::new(vec![1.0; 2], vec![2.0; 2], -1, vec![0.0; 2]).unwrap();
        assert!(matches!(fock_face_weights(&p, 2, 1.5), Err(WeightError::Ordering(_))));
    }
}
