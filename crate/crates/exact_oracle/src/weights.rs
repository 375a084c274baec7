use polymer_models::HybridWeights;
use weight_engine::Cascade;

use crate::OracleError;

fn shape(c: &Cascade, ell: usize) -> Result<(usize, usize), OracleError> {
    let n = c.n();
    if ell == 0 || ell > n {
        return Err(OracleError::Range(format!("slice {ell} outside 1..={n}")));
    }
    Ok((n + 1 - ell, ell))
}

/// Beta-Gamma polymer weights carried by the vertical swap graph at column
/// `ell`. Vertices outside the cascade window get placeholder weights; no
/// admissible path uses them.
pub fn vertical_polymer_weights(c: &Cascade, ell: usize) -> Result<HybridWeights, OracleError> {
    let (p, m) = shape(c, ell)?;
    let n = c.n() as i64;
    let beta = |x: i64, y: i64| {
        let level = (n + x + 1) as usize;
        let (i, j) = ((ell as i64 + x + 1) as usize, (-y) as usize);
        if j > level {
            return 0.5;
        }
        let f = c.level(level);
        f.a(i, j) / (f.a(i, j) + f.b(i, j))
    };
    let gamma = |x: i64, y: i64| {
        let level = (n - x) as usize;
        if ell + 1 > level || (-y) as usize > level {
            return 1.0;
        }
        let f = c.level(level);
        f.a(ell + 1, (-y) as usize) + f.b(ell + 1, (-y) as usize)
    };
    Ok(HybridWeights::beta_gamma(p, m, beta, gamma)?)
}

/// Gamma / log-Gamma polymer weights carried by the horizontal swap graph at
/// row `ell`.
pub fn horizontal_polymer_weights(c: &Cascade, ell: usize) -> Result<HybridWeights, OracleError> {
    let (p, m) = shape(c, ell)?;
    let n = c.n() as i64;
    let rho = |x: i64, y: i64| {
        let level = (n + x + 1) as usize;
        if (-y) as usize > level {
            return 1.0;
        }
        c.level(level).a((-y) as usize, (ell as i64 + x + 1) as usize)
    };
    let kappa = |x: i64, y: i64| {
        let level = (n - x) as usize;
        if (-y) as usize > level {
            return 1.0;
        }
        1.0 / c.level(level).b((-y) as usize, ell)
    };
    Ok(HybridWeights::gamma_loggamma(p, m, rho, kappa)?)
}
