use crate::DistError;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// B_2, B_4, ..., B_20
const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

const ASYMPTOTIC_FROM: f64 = 10.0;

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Polygamma function of order `k` (0 = digamma) for `k <= 3`.
///
/// Shifts `x` upward with the recurrence until `x >= 10` and finishes with the
/// asymptotic Bernoulli expansion.
pub fn polygamma(k: u32, x: f64) -> Result<f64, DistError> {
    if k > 3 {
        return Err(DistError::UnsupportedOrder(k));
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(DistError::Domain(x, "polygamma"));
    }
    let sign = if k % 2 == 0 { -1.0 } else { 1.0 }; // (-1)^(k+1)
    let kfact = factorial(k);
    let mut acc = 0.0;
    let mut z = x;
    while z < ASYMPTOTIC_FROM {
        // Psi_k(z) = Psi_k(z + 1) - (-1)^k k! / z^(k+1)
        acc += sign * kfact / z.powi(k as i32 + 1);
        z += 1.0;
    }
    Ok(acc + asymptotic(k, z))
}

fn asymptotic(k: u32, z: f64) -> f64 {
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    if k == 0 {
        let mut s = z.ln() - 0.5 * inv;
        let mut p = inv2;
        for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
            s -= b / (2.0 * (j as f64 + 1.0)) * p;
            p *= inv2;
        }
        return s;
    }
    let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
    let mut s = factorial(k - 1) * inv.powi(k as i32) + 0.5 * factorial(k) * inv.powi(k as i32 + 1);
    let mut p = inv.powi(k as i32 + 2);
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let two_j = 2 * (j as u32 + 1);
        // (2j + k - 1)! / (2j)!
        let ratio: f64 = (two_j + 1..=two_j + k - 1).map(f64::from).product();
        s += b * ratio * p;
        p *= inv2;
    }
    sign * s
}

/// Cumulant of order `k` of `log X` for `X ~ Gamma(shape, scale)`, `k in 2..=4`.
pub fn log_gamma_cumulant(k: u32, shape: f64) -> Result<f64, DistError> {
    if !(2..=4).contains(&k) {
        return Err(DistError::UnsupportedOrder(k));
    }
    polygamma(k - 1, shape)
}
