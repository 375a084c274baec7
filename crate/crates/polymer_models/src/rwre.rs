use dist_core::{sample_beta, BetaParams, RngStream};
use weight_engine::ParamSet;

use crate::PolymerError;

/// Walk from `-1` that stays at `y` at time `t` with probability `env(y, t)`
/// and otherwise steps to `y - 1`.
pub fn beta_rwre_with(
    horizon: usize,
    rng: &mut RngStream,
    mut env: impl FnMut(i64, usize, &mut RngStream) -> Result<f64, PolymerError>,
) -> Result<Vec<i64>, PolymerError> {
    let mut x = -1i64;
    let mut out = Vec::with_capacity(horizon + 1);
    out.push(x);
    for t in 0..horizon {
        let b = env(x, t, rng)?;
        if rng.uniform() >= b {
            x -= 1;
        }
        out.push(x);
    }
    Ok(out)
}

/// Trajectory `X_0..X_T` of the deformed Beta random walk. Each space-time
/// site is visited at most once, so drawing its Beta variable on arrival
/// gives the annealed law of a walk in a fresh environment.
pub fn beta_rwre(params: &ParamSet, horizon: usize, rng: &mut RngStream) -> Result<Vec<i64>, PolymerError> {
    beta_rwre_with(horizon, rng, |y, t, rng| {
        let i = t as i64 + 1;
        let a = params.a_shape(i, -y)?;
        let b = params.b_shape(i, -y, i)?;
        Ok(sample_beta(rng, BetaParams::new(a, b)?))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forced_environment() {
        let mut rng = RngStream::new(1, 0);
        let x = beta_rwre_with(10, &mut rng, |_, _, _| Ok(1.0)).unwrap();
        assert!(x.iter().all(|&v| v == -1));
        let x = beta_rwre(&ParamSet::homogeneous(1.0, 1.0, 50).unwrap(), 40, &mut rng).unwrap();
        for (t, w) in x.windows(2).enumerate() {
            assert!(w[1] == w[0] || w[1] == w[0] - 1);
            assert!(w[1] >= -(t as i64) - 2 && w[1] <= -1);
        }
    }
}
