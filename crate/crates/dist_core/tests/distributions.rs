use dist_core::*;
use proptest::prelude::*;
use rand_distr::{Distribution, LogNormal};
use statrs::distribution::{Beta, ContinuousCDF, Gamma};

const N: usize = 1_000_000;

fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, v.sqrt())
}

fn ks_stat(xs: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs());
    }
    d
}

// 0.1% critical value of the one-sample KS statistic
fn ks_crit(n: usize) -> f64 {
    1.949 / (n as f64).sqrt()
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let (mx, sx) = mean_sd(xs);
    let (my, sy) = mean_sd(ys);
    let n = xs.len() as f64;
    let c: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>() / (n - 1.0);
    c / (sx * sy)
}

/// Empirical CDF at ten oracle quantiles stays within 4 binomial SE of the level.
fn check_quantiles(xs: &[f64], inv_cdf: impl Fn(f64) -> f64) {
    let n = xs.len() as f64;
    for i in 1..=10 {
        let p = (i as f64 - 0.5) / 10.0;
        let q = inv_cdf(p);
        let frac = xs.iter().filter(|&&x| x <= q).count() as f64 / n;
        let se = (p * (1.0 - p) / n).sqrt();
        assert!((frac - p).abs() < 4.0 * se, "level {p}: got {frac}");
    }
}

#[test]
fn gamma_mean_and_tail() {
    let mut rng = RngStream::new(11, 0);
    let p = GammaParams::new(2.0, 3.0).unwrap();
    let xs: Vec<f64> = (0..N).map(|_| sample_gamma(&mut rng, p)).collect();
    let (m, _) = mean_sd(&xs);
    assert!((m - 6.0).abs() < 4.0 * (p.variance() / N as f64).sqrt());

    let e = GammaParams::unit(1.0).unwrap();
    let tail = (0..N).filter(|_| sample_gamma(&mut rng, e) > 1.0).count() as f64 / N as f64;
    let p1 = (-1.0f64).exp();
    assert!((tail - p1).abs() < 4.0 * (p1 * (1.0 - p1) / N as f64).sqrt());
}

#[test]
fn gamma_means_over_shapes() {
    let mut rng = RngStream::new(12, 0);
    for &(shape, scale) in &[(0.2, 1.0), (0.5, 2.0), (1.0, 0.3), (7.5, 1.0)] {
        let p = GammaParams::new(shape, scale).unwrap();
        let s = GammaSampler::new(p);
        let xs: Vec<f64> = (0..N).map(|_| s.sample(&mut rng)).collect();
        let (m, _) = mean_sd(&xs);
        assert!(
            (m - p.mean()).abs() < 4.0 * (p.variance() / N as f64).sqrt(),
            "shape {shape}: {m}"
        );
    }
}

#[test]
fn small_shape_never_zero_and_matches_quantiles() {
    let mut rng = RngStream::new(13, 0);
    let p = GammaParams::unit(0.2).unwrap();
    let xs: Vec<f64> = (0..N).map(|_| sample_gamma(&mut rng, p)).collect();
    assert!(xs.iter().all(|&x| x > 0.0));
    let oracle = Gamma::new(0.2, 1.0).unwrap();
    check_quantiles(&xs, |q| oracle.inverse_cdf(q));
}

#[test]
fn beta_uniform_and_mean() {
    let mut rng = RngStream::new(14, 0);
    let u = BetaParams::new(1.0, 1.0).unwrap();
    let mut xs: Vec<f64> = (0..N).map(|_| sample_beta(&mut rng, u)).collect();
    assert!(ks_stat(&mut xs, |x| x) < 0.005);

    let p = BetaParams::new(2.0, 3.0).unwrap();
    let ys: Vec<f64> = (0..N).map(|_| sample_beta(&mut rng, p)).collect();
    let (m, _) = mean_sd(&ys);
    let var = 2.0 * 3.0 / (25.0 * 6.0);
    assert!((m - 0.4).abs() < 4.0 * (var / N as f64).sqrt());
}

#[test]
fn beta_small_params_open_interval() {
    let mut rng = RngStream::new(15, 0);
    let p = BetaParams::new(0.2, 0.25).unwrap();
    let xs: Vec<f64> = (0..N).map(|_| sample_beta(&mut rng, p)).collect();
    assert!(xs.iter().all(|&x| x > 0.0 && x < 1.0));
    let oracle = Beta::new(0.2, 0.25).unwrap();
    check_quantiles(&xs, |q| oracle.inverse_cdf(q));
}

#[test]
fn inverse_variants() {
    let mut rng = RngStream::new(16, 0);
    let p = GammaParams::unit(3.0).unwrap();
    let xs: Vec<f64> = (0..200_000).map(|_| sample_inv_gamma(&mut rng, p)).collect();
    let (m, _) = mean_sd(&xs);
    // E[1/X] = 1/(shape - 1); sd of 1/X is 1/2 here
    assert!((m - 0.5).abs() < 4.0 * 0.5 / (200_000f64).sqrt());
    let b = BetaParams::new(3.0, 2.0).unwrap();
    let ys: Vec<f64> = (0..200_000).map(|_| sample_inv_beta(&mut rng, b)).collect();
    assert!(ys.iter().all(|&y| y > 1.0));
    // E[1/B] = (a + b - 1)/(a - 1) = 2
    let (m, s) = mean_sd(&ys);
    assert!((m - 2.0).abs() < 4.0 * s / (200_000f64).sqrt());
}

#[test]
fn merge_gives_independent_gamma_and_beta() {
    let n = 100_000;
    let mut rng = RngStream::new(17, 0);
    let gx = GammaSampler::unit(2.0);
    let gy = GammaSampler::unit(3.0);
    let (mut sums, mut ratios) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let (s, r) = lukacs_merge(gx.sample(&mut rng), gy.sample(&mut rng)).unwrap();
        sums.push(s);
        ratios.push(r);
    }
    let r = pearson(&sums, &ratios);
    assert!(r.abs() < 4.0 / (n as f64).sqrt(), "r = {r}");
    let g5 = Gamma::new(5.0, 1.0).unwrap();
    let b23 = Beta::new(2.0, 3.0).unwrap();
    assert!(ks_stat(&mut sums, |x| g5.cdf(x)) < ks_crit(n));
    assert!(ks_stat(&mut ratios, |x| b23.cdf(x)) < ks_crit(n));
}

#[test]
fn split_gives_independent_gammas() {
    let n = 100_000;
    let mut rng = RngStream::new(18, 0);
    let ga = GammaSampler::unit(5.0);
    let bp = BetaParams::new(2.0, 3.0).unwrap();
    let (mut xs, mut ys) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let (x, y) = lukacs_split(ga.sample(&mut rng), sample_beta(&mut rng, bp)).unwrap();
        xs.push(x);
        ys.push(y);
    }
    let r = pearson(&xs, &ys);
    assert!(r.abs() < 4.0 / (n as f64).sqrt(), "r = {r}");
    let g2 = Gamma::new(2.0, 1.0).unwrap();
    let g3 = Gamma::new(3.0, 1.0).unwrap();
    assert!(ks_stat(&mut xs, |x| g2.cdf(x)) < ks_crit(n));
    assert!(ks_stat(&mut ys, |x| g3.cdf(x)) < ks_crit(n));
}

/// corr(X + Y, X / (X + Y)) for X lognormal(0, 1), Y ~ Exp(1), by a product
/// trapezoid rule on (log X, Y).
fn lognormal_exp_corr_by_quadrature() -> f64 {
    let (nz, ny) = (1600, 4000);
    let (z0, z1, y1) = (-9.0, 9.0, 45.0);
    let hz = (z1 - z0) / nz as f64;
    let hy = y1 / ny as f64;
    let mut m = [0.0f64; 6]; // 1, S, S^2, R, R^2, SR
    for i in 0..=nz {
        let z: f64 = z0 + i as f64 * hz;
        let wz = (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
            * if i == 0 || i == nz { 0.5 } else { 1.0 }
            * hz;
        let x = z.exp();
        for j in 0..=ny {
            let y = j as f64 * hy;
            let w = wz * (-y).exp() * if j == 0 || j == ny { 0.5 } else { 1.0 } * hy;
            let s = x + y;
            let r = x / s;
            m[0] += w;
            m[1] += w * s;
            m[2] += w * s * s;
            m[3] += w * r;
            m[4] += w * r * r;
            m[5] += w * s * r;
        }
    }
    let es = m[1] / m[0];
    let er = m[3] / m[0];
    let vs = m[2] / m[0] - es * es;
    let vr = m[4] / m[0] - er * er;
    (m[5] / m[0] - es * er) / (vs * vr).sqrt()
}

#[test]
fn lognormal_negative_control_is_correlated() {
    let n = 100_000;
    let threshold = 10.0 / (n as f64).sqrt();
    let reference = lognormal_exp_corr_by_quadrature();
    assert!(reference.abs() > 2.0 * threshold, "oracle r = {reference}");

    let mut rng = RngStream::new(19, 0);
    let ln = LogNormal::new(0.0, 1.0).unwrap();
    let ey = GammaSampler::unit(1.0);
    let (mut sums, mut ratios) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let (s, r) = lukacs_merge(ln.sample(&mut rng), ey.sample(&mut rng)).unwrap();
        sums.push(s);
        ratios.push(r);
    }
    let r = pearson(&sums, &ratios);
    assert!(r.abs() > threshold, "r = {r}, oracle {reference}");
}

#[test]
fn log_gamma_variance_matches_trigamma() {
    let mut rng = RngStream::new(20, 0);
    let mut moments = Vec::new();
    for &scale in &[1.0, 10.0] {
        let s = GammaSampler::new(GammaParams::new(3.0, scale).unwrap());
        let ls: Vec<f64> = (0..N).map(|_| s.sample_log(&mut rng)).collect();
        let (m, sd) = mean_sd(&ls);
        let var = sd * sd;
        let k4 = log_gamma_cumulant(4, 3.0).unwrap();
        let k2 = log_gamma_cumulant(2, 3.0).unwrap();
        // SE of the sample variance: sqrt((k4 + 2 k2^2) / N)
        let se = ((k4 + 2.0 * k2 * k2) / N as f64).sqrt();
        assert!((var - k2).abs() < 4.0 * se, "scale {scale}: {var} vs {k2}");
        moments.push((m, var));
    }
    // only the mean moves with the scale
    assert!((moments[1].0 - moments[0].0 - 10f64.ln()).abs() < 0.01);
}

#[test]
fn polygamma_recurrence_random_points() {
    let mut rng = RngStream::new(21, 0);
    for _ in 0..100 {
        let x = 1e-3 + 50.0 * rng.uniform();
        for k in 0..=1u32 {
            let lhs = polygamma(k, x + 1.0).unwrap();
            let sign = if k == 0 { 1.0 } else { -1.0 };
            let rhs = polygamma(k, x).unwrap() + sign / x.powi(k as i32 + 1);
            let scale = lhs.abs().max(polygamma(k, x).unwrap().abs());
            assert!((lhs - rhs).abs() <= 1e-10 * scale, "k={k} x={x}");
        }
    }
    for &x in &[0.1, 1.0, 7.5] {
        let d = polygamma(0, x + 1.0).unwrap() - polygamma(0, x).unwrap() - 1.0 / x;
        assert!(d.abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]
    #[test]
    fn merge_split_round_trip(x in 1e-6f64..1e6, y in 1e-6f64..1e6) {
        let (a, b) = lukacs_merge(x, y).unwrap();
        let (x2, y2) = lukacs_split(a, b).unwrap();
        prop_assert!((x2 - x).abs() <= 4.0 * f64::EPSILON * a);
        prop_assert!((y2 - y).abs() <= 4.0 * f64::EPSILON * a);
        let (a2, b2) = lukacs_merge(x2, y2).unwrap();
        prop_assert!((a2 - a).abs() <= 4.0 * f64::EPSILON * a);
        prop_assert!((b2 - b).abs() <= 8.0 * f64::EPSILON);
    }
}
