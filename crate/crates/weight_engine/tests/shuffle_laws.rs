use dist_core::{sample_beta, BetaParams, GammaSampler, RngStream};
use rand_distr::{Distribution, LogNormal};
use statrs::distribution::{Beta, ContinuousCDF, Gamma};
use weight_engine::*;

fn ks(xs: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = xs.len() as f64;
    xs.iter().enumerate().fold(0.0f64, |d, (i, &x)| {
        let f = cdf(x);
        d.max((f - i as f64 / n).abs()).max(((i + 1) as f64 / n - f).abs())
    })
}

/// Asymptotic KS critical value at level `alpha`.
fn ks_crit(n: usize, alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt() / (n as f64).sqrt()
}

fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

fn random_params(rng: &mut RngStream, extent: usize) -> ParamSet {
    let psi = (0..extent).map(|_| 0.5 + 1.5 * rng.uniform()).collect();
    let phi = (0..2 * extent + 1).map(|_| 0.5 + 1.5 * rng.uniform()).collect();
    let theta = (0..extent).map(|_| 0.6 * rng.uniform() - 0.3).collect();
    ParamSet::new(psi, phi, -(extent as i64), theta).unwrap()
}

/// Per-cell samples of a window sequence: cell k of every replica.
fn columns(windows: &[WeightWindow], pick_a: bool) -> Vec<Vec<f64>> {
    let cells = windows[0].a.len();
    (0..cells)
        .map(|k| {
            windows
                .iter()
                .map(|w| if pick_a { w.a[k] } else { w.b[k] })
                .collect()
        })
        .collect()
}

/// Every cell of `out` against its Gamma marginal at `out.level`, with
/// Bonferroni over cells, and 20 cross-cell pairs uncorrelated.
fn check_window_law(params: &ParamSet, outs: &[WeightWindow], rng: &mut RngStream) {
    let w0 = &outs[0];
    let cells = w0.rows * w0.cols;
    let alpha = 1e-3 / (2 * cells) as f64;
    let n = outs.len();
    let mut a_cols = columns(outs, true);
    let mut b_cols = columns(outs, false);
    let mut all: Vec<Vec<f64>> = Vec::new();
    for i in w0.i0..=w0.i1() {
        for j in w0.j0..=w0.j1() {
            let k = ((i - w0.i0) as usize) * w0.cols + (j - w0.j0) as usize;
            let ga = Gamma::new(params.a_shape(i, j).unwrap(), 1.0).unwrap();
            let gb = Gamma::new(params.b_shape(i, j, w0.level).unwrap(), 1.0).unwrap();
            let da = ks(&mut a_cols[k].clone(), |x| ga.cdf(x));
            let db = ks(&mut b_cols[k].clone(), |x| gb.cdf(x));
            assert!(da < ks_crit(n, alpha), "a({i},{j}) D={da}");
            assert!(db < ks_crit(n, alpha), "b({i},{j}) D={db}");
        }
    }
    all.append(&mut a_cols);
    all.append(&mut b_cols);
    for _ in 0..20 {
        let p = (rng.uniform() * all.len() as f64) as usize;
        let mut q = (rng.uniform() * all.len() as f64) as usize;
        if q == p {
            q = (p + 1) % all.len();
        }
        let r = pearson(&all[p], &all[q]);
        assert!(r.abs() < 5.0 / (n as f64).sqrt(), "pair ({p},{q}) r={r}");
    }
}

#[test]
fn biased_field_marginals() {
    let mut rng = RngStream::new(100, 0);
    let p = ParamSet::homogeneous(0.2, 0.25, 3).unwrap();
    let (mut xa, mut xb) = (Vec::new(), Vec::new());
    for _ in 0..20_000 {
        let w = sample_weight_field(&p, 3, &mut rng).unwrap();
        xa.extend_from_slice(&w.a);
        xb.extend_from_slice(&w.b);
    }
    let ga = Gamma::new(0.2, 1.0).unwrap();
    let gb = Gamma::new(0.25, 1.0).unwrap();
    let n = xa.len();
    assert!(ks(&mut xa, |x| ga.cdf(x)) < ks_crit(n, 1e-3));
    assert!(ks(&mut xb, |x| gb.cdf(x)) < ks_crit(n, 1e-3));
}

#[test]
fn constant_theta_reparametrization() {
    let c = 0.3;
    let p = ParamSet::new(vec![1.0, 2.0], vec![0.8, 1.1, 1.4], -2, vec![c, c]).unwrap();
    let q = ParamSet::new(vec![1.0 + c, 2.0 + c], vec![0.8 - c, 1.1 - c, 1.4 - c], -2, vec![0.0; 2])
        .unwrap();
    for i in 1..=2 {
        for j in 1..=2 {
            assert!((p.a_shape(i, j).unwrap() - q.a_shape(i, j).unwrap()).abs() < 1e-15);
            assert!((p.b_shape(i, j, 2).unwrap() - q.b_shape(i, j, 2).unwrap()).abs() < 1e-15);
        }
    }
}

#[test]
fn order_one_sum_mean() {
    let mut rng = RngStream::new(101, 0);
    let p = ParamSet::new(vec![1.0], vec![1.0], 0, vec![0.0]).unwrap();
    let n = 200_000;
    let s: f64 = (0..n)
        .map(|_| {
            let w = sample_weight_field(&p, 1, &mut rng).unwrap();
            w.a[0] + w.b[0]
        })
        .sum();
    let m = s / n as f64;
    assert!((m - 2.0).abs() < 4.0 * (2.0 / n as f64).sqrt());
}

#[test]
fn too_small_shape_rejected_in_linear_space() {
    let mut rng = RngStream::new(102, 0);
    let p = ParamSet::homogeneous(0.01, 0.01, 2).unwrap();
    assert!(matches!(
        sample_weight_field(&p, 2, &mut rng),
        Err(WeightError::ShapeTooSmall(..))
    ));
    assert!(sample_log_weight_field(&p, 2, &mut rng).is_ok());
}

#[test]
fn up_and_down_are_inverse() {
    let mut rng = RngStream::new(103, 0);
    let e = GammaSampler::unit(1.0);
    let close = |x: f64, y: f64| ((x - y) / y).abs() < 1e-12;
    for _ in 0..10_000 {
        let (r, c) = (3 + (rng.uniform() * 4.0) as usize, 3 + (rng.uniform() * 4.0) as usize);
        let a: Vec<f64> = (0..r * c).map(|_| e.sample(&mut rng)).collect();
        let b: Vec<f64> = (0..r * c).map(|_| e.sample(&mut rng)).collect();
        let w = WeightWindow::new(5, 1, 1, r, c, a, b).unwrap();
        let back = w.downshuffle().unwrap().upshuffle().unwrap();
        let same = w.restrict(back.i0, back.i1(), back.j0, back.j1()).unwrap();
        assert_eq!(back.level, w.level);
        assert!(back.a.iter().zip(&same.a).all(|(x, y)| close(*x, *y)));
        assert!(back.b.iter().zip(&same.b).all(|(x, y)| close(*x, *y)));
        let fwd = w.upshuffle().unwrap().downshuffle().unwrap();
        let same = w.restrict(fwd.i0, fwd.i1(), fwd.j0, fwd.j1()).unwrap();
        assert!(fwd.a.iter().zip(&same.a).all(|(x, y)| close(*x, *y)));
        assert!(fwd.b.iter().zip(&same.b).all(|(x, y)| close(*x, *y)));
    }
}

#[test]
fn downshuffle_preserves_gamma_law() {
    let mut rng = RngStream::new(104, 0);
    let p = random_params(&mut rng, 4);
    let outs: Vec<WeightWindow> = (0..100_000)
        .map(|_| sample_weight_field(&p, 4, &mut rng).unwrap().downshuffle().as_window())
        .collect();
    assert_eq!(outs[0].level, 3);
    check_window_law(&p, &outs, &mut rng);
}

#[test]
fn upshuffle_preserves_gamma_law() {
    let mut rng = RngStream::new(105, 0);
    let p = random_params(&mut rng, 6);
    let outs: Vec<WeightWindow> = (0..100_000)
        .map(|_| {
            sample_weight_window(&p, 2, 1..=4, 1..=4, &mut rng)
                .unwrap()
                .upshuffle()
                .unwrap()
        })
        .collect();
    assert_eq!((outs[0].level, outs[0].i0, outs[0].j0), (3, 2, 2));
    check_window_law(&p, &outs, &mut rng);
}

fn upshuffle_log_pair(w: &WeightWindow) -> (f64, f64) {
    let up = w.upshuffle().unwrap();
    (up.a[0].ln(), up.b[0].ln())
}

#[test]
fn lognormal_control_is_dependent_gamma_is_not() {
    let n = 100_000;
    let mut rng = RngStream::new(106, 0);
    let reference = lognormal_upshuffle_reference(1.0);
    let ln = LogNormal::new(0.0, 1.0).unwrap();
    let (mut la, mut lb) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let a: Vec<f64> = (0..4).map(|_| ln.sample(&mut rng)).collect();
        let b: Vec<f64> = (0..4).map(|_| ln.sample(&mut rng)).collect();
        let (x, y) = upshuffle_log_pair(&WeightWindow::new(0, 1, 1, 2, 2, a, b).unwrap());
        la.push(x);
        lb.push(y);
    }
    let r = pearson(&la, &lb);
    let se = (1.0 - reference.corr * reference.corr) / (n as f64).sqrt();
    assert!((r - reference.corr).abs() < 4.0 * se, "r={r} ref={}", reference.corr);
    assert!(r > 10.0 / (n as f64).sqrt());

    let g = GammaSampler::unit(1.3);
    let (mut la, mut lb) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let a: Vec<f64> = (0..4).map(|_| g.sample(&mut rng)).collect();
        let b: Vec<f64> = (0..4).map(|_| g.sample(&mut rng)).collect();
        let (x, y) = upshuffle_log_pair(&WeightWindow::new(0, 1, 1, 2, 2, a, b).unwrap());
        la.push(x);
        lb.push(y);
    }
    assert!(pearson(&la, &lb).abs() < 4.0 / (n as f64).sqrt());
}

#[test]
fn vswap_law_and_sum_identity() {
    let n = 100_000;
    let mut rng = RngStream::new(107, 0);
    let x = [0.7, 1.5, 2.2];
    let y = [1.1, 0.4, 1.8];
    let gam: Vec<GammaSampler> = (0..3).map(|j| GammaSampler::unit(x[j] + y[j])).collect();
    let mut gh = vec![Vec::new(); 2];
    let mut bh = vec![Vec::new(); 2];
    for _ in 0..n {
        let beta: Vec<f64> = (0..3)
            .map(|j| sample_beta(&mut rng, BetaParams::new(x[j], y[j]).unwrap()))
            .collect();
        let gamma: Vec<f64> = gam.iter().map(|g| g.sample(&mut rng)).collect();
        let (g_hat, b_hat) = vswap_update(&beta, &gamma).unwrap();
        let lhs: f64 = g_hat.iter().sum();
        let rhs = gamma.iter().sum::<f64>() - (1.0 - beta[0]) * gamma[0] - beta[2] * gamma[2];
        assert!((lhs - rhs).abs() <= 1e-12 * rhs.abs().max(1.0));
        for j in 0..2 {
            gh[j].push(g_hat[j]);
            bh[j].push(b_hat[j]);
        }
    }
    let crit = ks_crit(n, 1e-3 / 4.0);
    for j in 0..2 {
        let g = Gamma::new(x[j] + y[j + 1], 1.0).unwrap();
        let b = Beta::new(x[j], y[j + 1]).unwrap();
        assert!(ks(&mut gh[j].clone(), |v| g.cdf(v)) < crit);
        assert!(ks(&mut bh[j].clone(), |v| b.cdf(v)) < crit);
    }
    let bound = 5.0 / (n as f64).sqrt();
    assert!(pearson(&gh[0], &bh[0]).abs() < bound);
    assert!(pearson(&gh[0], &gh[1]).abs() < bound);
    assert!(pearson(&bh[0], &bh[1]).abs() < bound);
    assert!(pearson(&gh[1], &bh[0]).abs() < bound);
}

#[test]
fn hswap_law() {
    let n = 100_000;
    let mut rng = RngStream::new(108, 0);
    let (psi, phi) = (1.2, 0.9);
    let theta = [0.2, -0.3, 0.1];
    let mut ah = vec![Vec::new(); 2];
    let mut bh = vec![Vec::new(); 2];
    for _ in 0..n {
        let a: Vec<f64> = theta.iter().map(|t| GammaSampler::unit(psi + t).sample(&mut rng)).collect();
        let b: Vec<f64> = theta.iter().map(|t| GammaSampler::unit(phi - t).sample(&mut rng)).collect();
        let (a2, b2) = hswap_update(&a, &b).unwrap();
        for i in 0..2 {
            ah[i].push(a2[i]);
            bh[i].push(b2[i]);
        }
    }
    let crit = ks_crit(n, 1e-3 / 4.0);
    for i in 0..2 {
        let ga = Gamma::new(psi + theta[i], 1.0).unwrap();
        let gb = Gamma::new(phi - theta[i], 1.0).unwrap();
        assert!(ks(&mut ah[i].clone(), |v| ga.cdf(v)) < crit);
        assert!(ks(&mut bh[i].clone(), |v| gb.cdf(v)) < crit);
    }
    let bound = 5.0 / (n as f64).sqrt();
    assert!(pearson(&ah[0], &bh[0]).abs() < bound);
    assert!(pearson(&ah[0], &ah[1]).abs() < bound);
    assert!(pearson(&ah[1], &bh[0]).abs() < bound);
}

#[test]
fn fock_error_halves_per_doubling() {
    let mut rng = RngStream::new(109, 0);
    for _ in 0..10 {
        let p = random_params(&mut rng, 5);
        let lim = limit_face_weights(&p, 5).unwrap();
        for &d in &[1e2, 1e3, 1e4] {
            let e1 = fock_face_weights(&p, 5, d).unwrap().max_rel_diff(&lim);
            let e2 = fock_face_weights(&p, 5, 2.0 * d).unwrap().max_rel_diff(&lim);
            let ratio = e2 / e1;
            assert!((0.4..=0.6).contains(&ratio), "delta {d}: ratio {ratio}");
        }
    }
}
