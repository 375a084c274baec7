use dist_core::{GammaSampler, RngStream};

use crate::{ParamSet, WeightError};

/// A weight field stored as logarithms; needed when shapes are so small that
/// linear draws lose all precision.
#[derive(Debug, Clone, PartialEq)]
pub struct LogWeightField {
    pub level: usize,
    pub la: Vec<f64>,
    pub lb: Vec<f64>,
}

pub fn sample_log_weight_field(
    params: &ParamSet,
    n: usize,
    rng: &mut RngStream,
) -> Result<LogWeightField, WeightError> {
    let mut la = Vec::with_capacity(n * n);
    let mut lb = Vec::with_capacity(n * n);
    let lvl = n as i64;
    for i in 1..=lvl {
        for j in 1..=lvl {
            la.push(GammaSampler::unit(params.a_shape(i, j)?).sample_log(rng));
            lb.push(GammaSampler::unit(params.b_shape(i, j, lvl)?).sample_log(rng));
        }
    }
    Ok(LogWeightField { level: n, la, lb })
}

#[inline]
fn logaddexp(x: f64, y: f64) -> f64 {
    let (hi, lo) = if x > y { (x, y) } else { (y, x) };
    hi + (lo - hi).exp().ln_1p()
}

/// `log Z` of the Aztec diamond carrying this field, by the log-domain cascade.
pub fn log_partition_of_field(f: &LogWeightField) -> f64 {
    let mut n = f.level;
    let mut la = f.la.clone();
    let mut lb = f.lb.clone();
    let mut ls = vec![0.0; n * n];
    let mut total = 0.0;
    while n > 0 {
        for k in 0..n * n {
            ls[k] = logaddexp(la[k], lb[k]);
        }
        total += ls[..n].iter().sum::<f64>();
        if n == 1 {
            break;
        }
        let m = n - 1;
        // in-place is safe: output (r, c) only reads rows r, r+1 and columns c, c+1
        for r in 0..m {
            for c in 0..m {
                let here = r * n + c;
                let below = here + n;
                la[r * m + c] = la[here] - ls[here] + ls[below];
                lb[r * m + c] = lb[here + 1] - ls[here + 1] + ls[below + 1];
            }
        }
        n = m;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{cascade, partition_product, WeightField};

    #[test]
    fn agrees_with_linear_cascade() {
        let mut rng = RngStream::new(5, 0);
        let p = ParamSet::homogeneous(0.7, 1.3, 6).unwrap();
        for _ in 0..20 {
            let lf = sample_log_weight_field(&p, 6, &mut rng).unwrap();
            let w = WeightField::new(
                6,
                lf.la.iter().map(|x| x.exp()).collect(),
                lf.lb.iter().map(|x| x.exp()).collect(),
            )
            .unwrap();
            let lin = partition_product(&cascade(&w));
            assert!((log_partition_of_field(&lf) - lin).abs() < 1e-10);
        }
    }
}
