use std::f64::consts::PI;

/// Log-scale dependence between the two outputs of one upshuffle cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpshuffleDependence {
    /// `Cov(log a_up, log b_up)`.
    pub cov: f64,
    /// `Var(log a_up)`, equal to `Var(log b_up)` by symmetry.
    pub var: f64,
    pub corr: f64,
}

/// `E f(W)` for `W ~ N(0, var)` by the trapezoid rule.
fn gauss_expect(var: f64, f: impl Fn(f64) -> f64) -> f64 {
    let sd = var.sqrt();
    let steps = 8000;
    let lim = 14.0 * sd;
    let h = 2.0 * lim / steps as f64;
    let norm = 1.0 / (2.0 * PI * var).sqrt();
    (0..=steps)
        .map(|k| {
            let w = -lim + k as f64 * h;
            let t = if k == 0 || k == steps { 0.5 } else { 1.0 };
            t * f(w) * (-0.5 * w * w / var).exp()
        })
        .sum::<f64>()
        * h
        * norm
}

fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Reference dependence when all four input weights of an upshuffle cell are
/// i.i.d. lognormal(0, sigma^2).
///
/// With `S` the sum feeding the multiplier and `B` the split ratio,
/// `Cov = Var(log S) + Cov(log B, log(1 - B))` and `Var = Var(log S) + Var(log B)`.
pub fn lognormal_upshuffle_reference(sigma: f64) -> UpshuffleDependence {
    let v = 2.0 * sigma * sigma;
    // log S = (Z1 + Z2)/2 + log(2 cosh(W/2)), W = Z1 - Z2 independent of Z1 + Z2
    let lc = |w: f64| softplus(w) - 0.5 * w; // log(2 cosh(w/2))
    let m1 = gauss_expect(v, lc);
    let m2 = gauss_expect(v, |w| lc(w).powi(2));
    let var_log_s = sigma * sigma / 2.0 + (m2 - m1 * m1);
    // log B = -softplus(D), log(1 - B) = -softplus(-D), D = log b - log a
    let e1 = gauss_expect(v, |d| -softplus(d));
    let e11 = gauss_expect(v, |d| softplus(d).powi(2));
    let e12 = gauss_expect(v, |d| softplus(d) * softplus(-d));
    let var_log_b = e11 - e1 * e1;
    let cov_b = e12 - e1 * e1; // E[log B] = E[log(1-B)] by symmetry
    let cov = var_log_s + cov_b;
    let var = var_log_s + var_log_b;
    UpshuffleDependence {
        cov,
        var,
        corr: cov / var,
    }
}
