use crate::WeightError;

/// Weight update for exchanging an adjacent `(+)`-column with weights `beta`
/// and the `(-)`-column with weights `gamma` to its right.
///
/// `gamma_hat_j = beta_j gamma_j + (1 - beta_{j+1}) gamma_{j+1}`,
/// `beta_hat_j = beta_j gamma_j / gamma_hat_j`.
pub fn vswap_update(beta: &[f64], gamma: &[f64]) -> Result<(Vec<f64>, Vec<f64>), WeightError> {
    if beta.len() != gamma.len() {
        return Err(WeightError::Length(format!(
            "beta has {} entries, gamma {}",
            beta.len(),
            gamma.len()
        )));
    }
    let m = beta.len();
    let mut gamma_hat = Vec::with_capacity(m.saturating_sub(1));
    let mut beta_hat = Vec::with_capacity(m.saturating_sub(1));
    for j in 0..m.saturating_sub(1) {
        let top = beta[j] * gamma[j];
        let g = top + (1.0 - beta[j + 1]) * gamma[j + 1];
        gamma_hat.push(g);
        beta_hat.push(top / g);
    }
    Ok((gamma_hat, beta_hat))
}

/// Downshuffle restricted to one column of squares: from `a_{i,j}`, `b_{i,j}`
/// (`i = 1..m`) returns `a^{down}_{i,j}` and `b^{down}_{i,j-1}` for `i = 1..m-1`.
pub fn hswap_update(a: &[f64], b: &[f64]) -> Result<(Vec<f64>, Vec<f64>), WeightError> {
    if a.len() != b.len() {
        return Err(WeightError::Length(format!(
            "a has {} entries, b {}",
            a.len(),
            b.len()
        )));
    }
    let m = a.len();
    let mut a_out = Vec::with_capacity(m.saturating_sub(1));
    let mut b_out = Vec::with_capacity(m.saturating_sub(1));
    for i in 0..m.saturating_sub(1) {
        let r = (a[i + 1] + b[i + 1]) / (a[i] + b[i]);
        a_out.push(a[i] * r);
        b_out.push(b[i] * r);
    }
    Ok((a_out, b_out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vswap_examples() {
        let (g, b) = vswap_update(&[0.5, 0.5], &[1.0, 1.0]).unwrap();
        assert_eq!((g, b), (vec![1.0], vec![0.5]));
        let (g, b) = vswap_update(&[0.25, 0.5], &[2.0, 4.0]).unwrap();
        assert!((g[0] - 2.5).abs() < 1e-15 && (b[0] - 0.2).abs() < 1e-15);
        let (g, b) = vswap_update(&[0.3], &[1.0]).unwrap();
        assert!(g.is_empty() && b.is_empty());
    }

    #[test]
    fn hswap_examples() {
        let (a, b) = hswap_update(&[1.0, 1.0], &[1.0, 1.0]).unwrap();
        assert_eq!((a, b), (vec![1.0], vec![1.0]));
        // column j = 1 of the level-2 example field: a = (1, 2), b = (1, 2)
        let (a, b) = hswap_update(&[1.0, 2.0], &[1.0, 2.0]).unwrap();
        assert!((a[0] - 2.0).abs() < 1e-15 && (b[0] - 2.0).abs() < 1e-15);
        assert!(hswap_update(&[1.0], &[1.0, 2.0]).is_err());
    }
}
